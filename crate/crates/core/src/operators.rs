//! Left and right operator semirings of a finite Γ-semiring.
//!
//! A congruence class of formal sums `Σ[xᵢ, αᵢ]` is identified by its action
//! `a ↦ Σ xᵢ αᵢ a` on `S` (dually `a ↦ Σ a γⱼ xⱼ` for the right side), so the
//! operator semiring is realized as the additive closure of the single-pair
//! actions, with composition as multiplication.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::fuzzy::CrispSubset;
use crate::par;
use crate::structure::{GammaSemiring, Semiring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Side::Left => "l",
            Side::Right => "r",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "left" | "l" => Ok(Side::Left),
            "right" | "r" => Ok(Side::Right),
            other => Err(format!("unknown side `{other}`")),
        }
    }
}

/// A map `S → S`; position `a` holds the image of `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionMap {
    pub values: Vec<u32>,
    pub side: Side,
}

impl ActionMap {
    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.values[a] as usize
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v as usize == i)
    }

    /// `f(a + b) = f(a) + f(b)` for all `a, b`, and `f(0) = 0`.
    pub fn is_additive(&self, g: &GammaSemiring) -> bool {
        let n = g.s_len();
        self.values.len() == n
            && self.apply(0) == 0
            && (0..n).all(|a| (0..n).all(|b| self.apply(g.add_s(a, b)) == g.add_s(self.apply(a), self.apply(b))))
    }
}

/// The action of a single pair: `a ↦ x α a` on the left, `a ↦ a γ x` on the
/// right. `s` is the `S`-component and `gamma` the `Γ`-component in both cases.
pub fn action_of_pair(g: &GammaSemiring, s: usize, gamma: usize, side: Side) -> ActionMap {
    let values = (0..g.s_len())
        .map(|a| match side {
            Side::Left => g.prod(s, gamma, a) as u32,
            Side::Right => g.prod(a, gamma, s) as u32,
        })
        .collect();
    ActionMap { values, side }
}

/// One generator `[x, α]` (left) or `[γ, x]` (right), stored as indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Pair {
    pub s: usize,
    pub gamma: usize,
}

impl Pair {
    // written order: (x, α) on the left, (γ, x) on the right
    fn key(self, side: Side) -> (usize, usize) {
        match side {
            Side::Left => (self.s, self.gamma),
            Side::Right => (self.gamma, self.s),
        }
    }
}

/// A finite operator semiring of action maps.
#[derive(Debug, Clone)]
pub struct OperatorSemiring {
    side: Side,
    base_name: String,
    base_s_ids: Vec<String>,
    base_g_len: usize,
    base_add: Vec<u32>,
    elements: Vec<ActionMap>,
    provenance: Vec<Vec<Pair>>,
    semiring: Semiring,
    // (s * |Γ| + γ) -> element index of the pair's action
    pair_index: Vec<u32>,
    index: HashMap<Vec<u32>, usize>,
}

fn sorted_insert(prov: &[Pair], p: Pair, side: Side) -> Vec<Pair> {
    let mut out = prov.to_vec();
    let pos = out.partition_point(|q| q.key(side) <= p.key(side));
    out.insert(pos, p);
    out
}

fn prov_key(prov: &[Pair], side: Side) -> Vec<(usize, usize)> {
    prov.iter().map(|p| p.key(side)).collect()
}

/// Builds the left or right operator semiring of `g` by worklist saturation.
///
/// Elements are the additive closure of all single-pair actions (the zero
/// map is the action of any `[0, α]`). Provenance is the shortest sum found,
/// ties broken by the lexicographically smallest sorted list of pairs.
pub fn build_operator_semiring(g: &GammaSemiring, side: Side, caps: &Caps) -> Result<OperatorSemiring> {
    let (ns, ng) = (g.s_len(), g.g_len());
    let started = Instant::now();

    let pair_actions: Vec<ActionMap> =
        par::map_range(ns * ng, |k| action_of_pair(g, k / ng, k % ng, side));

    // distinct generators, each represented by its smallest pair
    let mut gens: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (k, _) in pair_actions.iter().enumerate() {
        let p = Pair { s: k / ng, gamma: k % ng };
        gens.insert(p.key(side), k);
    }
    let mut generators: Vec<(Pair, Vec<u32>)> = Vec::new();
    let mut seen: HashMap<&[u32], ()> = HashMap::new();
    for (_, &k) in gens.iter() {
        let values = &pair_actions[k].values;
        if seen.insert(values.as_slice(), ()).is_none() {
            generators.push((Pair { s: k / ng, gamma: k % ng }, values.clone()));
        }
    }

    let add = |a: &[u32], b: &[u32]| -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| g.add_s(x as usize, y as usize) as u32).collect()
    };

    let mut known: HashMap<Vec<u32>, Vec<Pair>> = HashMap::new();
    let mut frontier: Vec<Vec<u32>> = Vec::new();
    for (p, v) in &generators {
        known.insert(v.clone(), vec![*p]);
        frontier.push(v.clone());
    }
    while !frontier.is_empty() {
        let mut layer: BTreeMap<Vec<u32>, Vec<Pair>> = BTreeMap::new();
        for f in &frontier {
            let prov_f = known[f].clone();
            for (p, gv) in &generators {
                let h = add(f, gv);
                if known.contains_key(&h) {
                    continue;
                }
                let cand = sorted_insert(&prov_f, *p, side);
                match layer.get(&h) {
                    Some(cur) if prov_key(cur, side) <= prov_key(&cand, side) => {}
                    _ => {
                        layer.insert(h, cand);
                    }
                }
            }
        }
        if known.len() + layer.len() > caps.closure {
            return Err(Error::CapExceeded {
                what: "operator closure",
                needed: format!("more than {}", caps.closure),
                cap: caps.closure as u64,
            });
        }
        if let Some(budget) = caps.closure_time {
            if started.elapsed() > budget {
                return Err(Error::Budget { elements: known.len() + layer.len() });
            }
        }
        frontier = layer.keys().cloned().collect();
        known.extend(layer);
    }

    let mut entries: Vec<(Vec<u32>, Vec<Pair>)> = known.into_iter().collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let index: HashMap<Vec<u32>, usize> =
        entries.iter().enumerate().map(|(i, (v, _))| (v.clone(), i)).collect();
    let m = entries.len();

    let lookup = |v: &[u32]| index.get(v).copied();
    let rows: Vec<Option<(Vec<u32>, Vec<u32>)>> = par::map_range(m, |i| {
        let f = &entries[i].0;
        let mut add_row = Vec::with_capacity(m);
        let mut mul_row = Vec::with_capacity(m);
        for (h, _) in &entries {
            add_row.push(lookup(&add(f, h))? as u32);
            let comp: Vec<u32> = match side {
                // (f·h)(a) = f(h(a))
                Side::Left => h.iter().map(|&x| f[x as usize]).collect(),
                // (f·h)(a) = h(f(a))
                Side::Right => f.iter().map(|&x| h[x as usize]).collect(),
            };
            mul_row.push(lookup(&comp)? as u32);
        }
        Some((add_row, mul_row))
    });
    let mut add_t = Vec::with_capacity(m * m);
    let mut mul_t = Vec::with_capacity(m * m);
    for row in rows {
        let (a, b) = row.ok_or(Error::NotClosed)?;
        add_t.extend(a);
        mul_t.extend(b);
    }

    let ids: Vec<String> = (0..m).map(|i| format!("{}{i}", side.prefix())).collect();
    let label = match side {
        Side::Left => "L",
        Side::Right => "R",
    };
    let semiring = Semiring::new(format!("{label}({})", g.name()), ids, add_t, mul_t)?;
    let pair_index = pair_actions
        .iter()
        .map(|a| index[&a.values] as u32)
        .collect();

    let (elements, provenance): (Vec<ActionMap>, Vec<Vec<Pair>>) = entries
        .into_iter()
        .map(|(values, prov)| (ActionMap { values, side }, prov))
        .unzip();

    Ok(OperatorSemiring {
        side,
        base_name: g.name().to_string(),
        base_s_ids: g.s_ids().to_vec(),
        base_g_len: ng,
        base_add: g.add_s_table().to_vec(),
        elements,
        provenance,
        semiring,
        pair_index,
        index,
    })
}

impl OperatorSemiring {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn base_name(&self) -> &str {
        &self.base_name
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ActionMap] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ActionMap {
        &self.elements[i]
    }

    pub fn provenance(&self, i: usize) -> &[Pair] {
        &self.provenance[i]
    }

    /// The element list as a plain semiring (ids `l<k>` / `r<k>`).
    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn ids(&self) -> &[String] {
        self.semiring.ids()
    }

    pub fn s_len(&self) -> usize {
        self.base_s_ids.len()
    }

    pub fn g_len(&self) -> usize {
        self.base_g_len
    }

    pub fn index_of(&self, values: &[u32]) -> Option<usize> {
        self.index.get(values).copied()
    }

    /// Element index of the single-pair action `[s, γ]` (left) or `[γ, s]` (right).
    pub fn pair_element(&self, s: usize, gamma: usize) -> usize {
        self.pair_index[s * self.base_g_len + gamma] as usize
    }

    fn base_add(&self, a: usize, b: usize) -> usize {
        self.base_add[a * self.base_s_ids.len() + b] as usize
    }

    /// The unity (identity action) if present.
    pub fn find_unity(&self) -> Option<usize> {
        self.elements.iter().position(ActionMap::is_identity)
    }

    /// Renders the provenance of element `i` as a formal sum, e.g. `[1,1]+[2,3]`.
    pub fn provenance_string(&self, i: usize, g_ids: &[String]) -> String {
        self.provenance[i]
            .iter()
            .map(|p| match self.side {
                Side::Left => format!("[{},{}]", self.base_s_ids[p.s], g_ids[p.gamma]),
                Side::Right => format!("[{},{}]", g_ids[p.gamma], self.base_s_ids[p.s]),
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    fn expect_side(&self, side: Side) -> Result<()> {
        if self.side != side {
            return Err(Error::SideMismatch { expected: side, found: self.side });
        }
        Ok(())
    }

    /// `{a ∈ S : [a, γ] ∈ P for every γ}` (dually `[γ, a]`).
    fn restrict_set(&self, p: &CrispSubset) -> Result<CrispSubset> {
        check_len(p.len(), self.len())?;
        let ns = self.s_len();
        Ok(CrispSubset::from_fn(ns, |a| {
            (0..self.base_g_len).all(|gamma| p.contains(self.pair_element(a, gamma)))
        }))
    }

    /// `{f : additive closure of f(S) ⊆ Q}`.
    fn lift_set(&self, q: &CrispSubset) -> Result<CrispSubset> {
        check_len(q.len(), self.s_len())?;
        Ok(CrispSubset::from_fn(self.len(), |i| {
            let image = self.additive_closure(self.elements[i].values.iter().map(|&v| v as usize));
            image.iter().all(|&x| q.contains(x))
        }))
    }

    /// `{f : f(s) ∈ Q for every s}`.
    fn lift_set_pointwise(&self, q: &CrispSubset) -> Result<CrispSubset> {
        check_len(q.len(), self.s_len())?;
        Ok(CrispSubset::from_fn(self.len(), |i| {
            self.elements[i].values.iter().all(|&v| q.contains(v as usize))
        }))
    }

    fn additive_closure(&self, seed: impl Iterator<Item = usize>) -> Vec<usize> {
        let ns = self.s_len();
        let mut inside = vec![false; ns];
        let mut members: Vec<usize> = Vec::new();
        for s in seed {
            if !inside[s] {
                inside[s] = true;
                members.push(s);
            }
        }
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            let mut j = 0;
            while j <= i {
                let c = self.base_add(a, members[j]);
                if !inside[c] {
                    inside[c] = true;
                    members.push(c);
                }
                j += 1;
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }
}

fn check_len(found: usize, expected: usize) -> Result<()> {
    if found != expected {
        return Err(Error::CarrierMismatch { expected, found });
    }
    Ok(())
}

/// `P⁺ = {a ∈ S : [a, Γ] ⊆ P}` for `P ⊆ L`.
pub fn plus_set(l: &OperatorSemiring, p: &CrispSubset) -> Result<CrispSubset> {
    l.expect_side(Side::Left)?;
    l.restrict_set(p)
}

/// `Q⁺' = {f ∈ L : every finite sum of values of f lies in Q}`.
pub fn plusprime_set(l: &OperatorSemiring, q: &CrispSubset) -> Result<CrispSubset> {
    l.expect_side(Side::Left)?;
    l.lift_set(q)
}

/// `{f ∈ L : f(S) ⊆ Q}`; agrees with `plusprime_set` when `Q` is additively closed.
pub fn plusprime_set_pointwise(l: &OperatorSemiring, q: &CrispSubset) -> Result<CrispSubset> {
    l.expect_side(Side::Left)?;
    l.lift_set_pointwise(q)
}

/// `P* = {a ∈ S : [Γ, a] ⊆ P}` for `P ⊆ R`.
pub fn star_set(r: &OperatorSemiring, p: &CrispSubset) -> Result<CrispSubset> {
    r.expect_side(Side::Right)?;
    r.restrict_set(p)
}

/// `Q*' = {g ∈ R : every finite sum of values of g lies in Q}`.
pub fn starprime_set(r: &OperatorSemiring, q: &CrispSubset) -> Result<CrispSubset> {
    r.expect_side(Side::Right)?;
    r.lift_set(q)
}

pub fn starprime_set_pointwise(r: &OperatorSemiring, q: &CrispSubset) -> Result<CrispSubset> {
    r.expect_side(Side::Right)?;
    r.lift_set_pointwise(q)
}

/// Side-generic restriction (`P⁺` or `P*`).
pub fn restrict_set(op: &OperatorSemiring, p: &CrispSubset) -> Result<CrispSubset> {
    op.restrict_set(p)
}

/// Side-generic lift (`Q⁺'` or `Q*'`).
pub fn lift_set(op: &OperatorSemiring, q: &CrispSubset) -> Result<CrispSubset> {
    op.lift_set(q)
}

pub fn lift_set_pointwise(op: &OperatorSemiring, q: &CrispSubset) -> Result<CrispSubset> {
    op.lift_set_pointwise(q)
}
