//! One falsifiable check per statement, run over enumerated objects.

use std::collections::{HashMap, HashSet};

use crate::config::Caps;
use crate::error::Result;
use crate::fuzzy::{
    characteristic, enumerate_crisp_ideals, enumerate_fuzzy_ideals, fuzzy_intersection, fuzzy_sum,
    is_crisp_ideal, is_fuzzy_ideal, CrispSubset, FuzzySubset, IdealKind,
};
use crate::grade::{Grade, GradeChain};
use crate::operators::{build_operator_semiring, lift_set, lift_set_pointwise, restrict_set, OperatorSemiring, Side};
use crate::structure::{
    generated_ideal, has_inverses, is_commutative, is_gamma_semifield, is_semifield, is_zdf,
    semifield_witness, zdf_witness, FiniteStructure, GammaSemiring, Semiring,
};
use crate::transfer::{lift, restrict};

use super::report::{Counterexample, ReportBuilder, VerificationReport, WitnessSubset};

type Check = std::result::Result<(), Counterexample>;

/// Largest family of arbitrary fuzzy subsets used for the intersection lemma.
const ARBITRARY_FAMILY_LIMIT: u64 = 4096;

struct Ops {
    left: OperatorSemiring,
    right: OperatorSemiring,
}

impl Ops {
    fn build(g: &GammaSemiring, caps: &Caps) -> Result<Self> {
        Ok(Ops {
            left: build_operator_semiring(g, Side::Left, caps)?,
            right: build_operator_semiring(g, Side::Right, caps)?,
        })
    }

    fn side(&self, side: Side) -> &OperatorSemiring {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }
}

fn carrier_label(side: Side) -> &'static str {
    match side {
        Side::Left => "L",
        Side::Right => "R",
    }
}

fn family_label(kind: IdealKind, carrier: &str) -> String {
    let prefix = match kind {
        IdealKind::Left => "FLI",
        IdealKind::Right => "FRI",
        IdealKind::TwoSided => "FI",
    };
    format!("{prefix}({carrier})")
}

fn crisp_label(kind: IdealKind, carrier: &str) -> String {
    let prefix = match kind {
        IdealKind::Left => "LI",
        IdealKind::Right => "RI",
        IdealKind::TwoSided => "I",
    };
    format!("{prefix}({carrier})")
}

// Checks: ideal predicate plus the μ(0) = 1 convention.
fn is_normalized_ideal<S: FiniteStructure + ?Sized>(s: &S, mu: &FuzzySubset, kind: IdealKind) -> bool {
    mu.grade(0) == Grade::ONE && is_fuzzy_ideal(s, mu, kind)
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, f: impl Fn(T) -> Check) -> Check {
    for item in items {
        f(item)?;
    }
    Ok(())
}

fn fw(label: &str, carrier: &str, mu: &FuzzySubset) -> WitnessSubset {
    WitnessSubset::fuzzy(label, carrier, mu)
}

/// Every clause of the fuzzy-ideal transfer proposition, plus the
/// intersection lemma, for `L` and dually for `R`. Clause (ii) needs the
/// other side's unity and clause (viii) this side's unity.
pub fn verify_prop_3_4(g: &GammaSemiring, chain: &GradeChain, caps: &Caps) -> Result<VerificationReport> {
    let ops = Ops::build(g, caps)?;
    let mut rep = ReportBuilder::new("prop3.4", g.name(), Some(chain));
    let fs = enumerate_fuzzy_ideals(g, chain, IdealKind::TwoSided, caps.enumeration)?;
    rep.count("FI(S)", fs.len());
    for side in [Side::Left, Side::Right] {
        let op = ops.side(side);
        let other = ops.side(side.other());
        let lab = carrier_label(side);
        let tag = |clause: &str| match side {
            Side::Left => format!("({clause})"),
            Side::Right => format!("({clause})*"),
        };
        let ring = op.semiring();
        let fo = enumerate_fuzzy_ideals(ring, chain, IdealKind::TwoSided, caps.enumeration)?;
        rep.count(format!("FI({lab})"), fo.len());
        let lifts: Vec<FuzzySubset> = fs.iter().map(|s| lift(op, s)).collect::<Result<_>>()?;
        let restricts: Vec<FuzzySubset> = fo.iter().map(|m| restrict(op, m)).collect::<Result<_>>()?;

        rep.check(
            tag("i"),
            first_failure(fs.iter().zip(&lifts), |(s, ls)| {
                if !is_normalized_ideal(ring, ls, IdealKind::TwoSided) {
                    return Err(Counterexample::new(format!("lift of σ is not a fuzzy ideal of {lab}"))
                        .subset(fw("σ", "S", s))
                        .subset(fw("σ'", lab, ls)));
                }
                Ok(())
            }),
        );
        // the non-constancy half rests on the same unity as (ii)
        if other.find_unity().is_some() {
            rep.check(
                tag("i") + " non-constant",
                first_failure(fs.iter().zip(&lifts), |(s, ls)| {
                    if s.is_non_constant() && !ls.is_non_constant() {
                        return Err(Counterexample::new("non-constant σ lifts to a constant subset")
                            .subset(fw("σ", "S", s))
                            .subset(fw("σ'", lab, ls)));
                    }
                    Ok(())
                }),
            );
        } else {
            rep.unmet(tag("i") + " non-constant", format!("no unity in {}", carrier_label(side.other())));
        }

        if other.find_unity().is_some() {
            rep.check(
                tag("ii"),
                first_failure(fs.iter().zip(&lifts), |(s, ls)| {
                    let back = restrict(op, ls).expect("carrier sizes agree");
                    if &back != s {
                        return Err(Counterexample::new("restriction of the lift differs from σ")
                            .subset(fw("σ", "S", s))
                            .subset(fw("σ''", "S", &back)));
                    }
                    Ok(())
                }),
            );
        } else {
            rep.unmet(tag("ii"), format!("no unity in {}", carrier_label(side.other())));
        }

        // injectivity is a consequence of (ii) and shares its precondition
        if other.find_unity().is_some() {
            let mut seen: HashMap<&FuzzySubset, usize> = HashMap::new();
            let mut injective = Ok(());
            for (i, ls) in lifts.iter().enumerate() {
                if let Some(&j) = seen.get(ls) {
                    injective = Err(Counterexample::new("two distinct ideals have the same lift")
                        .subset(fw("σ1", "S", &fs[j]))
                        .subset(fw("σ2", "S", &fs[i]))
                        .subset(fw("σ'", lab, ls)));
                    break;
                }
                seen.insert(ls, i);
            }
            rep.check(tag("iii"), injective);
        } else {
            rep.unmet(tag("iii"), format!("no unity in {}", carrier_label(side.other())));
        }

        let pairs: Vec<(usize, usize)> =
            (0..fs.len()).flat_map(|i| (0..fs.len()).map(move |j| (i, j))).collect();
        rep.count(format!("pairs({lab})"), pairs.len());
        rep.check(
            tag("iv"),
            first_failure(pairs.iter(), |&(i, j)| {
                let lhs = lift(op, &fuzzy_sum(g, &fs[i], &fs[j]).expect("same carrier")).expect("carrier");
                let rhs = fuzzy_sum(ring, &lifts[i], &lifts[j]).expect("same carrier");
                if lhs != rhs {
                    return Err(Counterexample::new("lift of σ1⊕σ2 differs from σ1'⊕σ2'")
                        .subset(fw("σ1", "S", &fs[i]))
                        .subset(fw("σ2", "S", &fs[j]))
                        .subset(fw("(σ1⊕σ2)'", lab, &lhs))
                        .subset(fw("σ1'⊕σ2'", lab, &rhs)));
                }
                Ok(())
            }),
        );
        rep.check(
            tag("v"),
            first_failure(pairs.iter(), |&(i, j)| {
                let lhs = lift(op, &fuzzy_intersection(&[&fs[i], &fs[j]]).expect("same carrier")).expect("carrier");
                let rhs = fuzzy_intersection(&[&lifts[i], &lifts[j]]).expect("same carrier");
                if lhs != rhs {
                    return Err(Counterexample::new("lift of σ1∩σ2 differs from σ1'∩σ2'")
                        .subset(fw("σ1", "S", &fs[i]))
                        .subset(fw("σ2", "S", &fs[j])));
                }
                Ok(())
            }),
        );
        rep.check(
            tag("vi"),
            first_failure(pairs.iter(), |&(i, j)| {
                if fs[i].is_subset(&fs[j]) && !lifts[i].is_subset(&lifts[j]) {
                    return Err(Counterexample::new("σ1 ⊆ σ2 but σ1' ⊄ σ2'")
                        .subset(fw("σ1", "S", &fs[i]))
                        .subset(fw("σ2", "S", &fs[j])));
                }
                Ok(())
            }),
        );

        rep.check(
            tag("vii"),
            first_failure(fo.iter().zip(&restricts), |(m, rm)| {
                if !is_normalized_ideal(g, rm, IdealKind::TwoSided) {
                    return Err(Counterexample::new("restriction of μ is not a fuzzy ideal of S")
                        .subset(fw("μ", lab, m))
                        .subset(fw("μ_S", "S", rm)));
                }
                Ok(())
            }),
        );
        if op.find_unity().is_some() {
            rep.check(
                tag("vii") + " non-constant",
                first_failure(fo.iter().zip(&restricts), |(m, rm)| {
                    if m.is_non_constant() && !rm.is_non_constant() {
                        return Err(Counterexample::new("non-constant μ restricts to a constant subset")
                            .subset(fw("μ", lab, m))
                            .subset(fw("μ_S", "S", rm)));
                    }
                    Ok(())
                }),
            );
        } else {
            rep.unmet(tag("vii") + " non-constant", format!("no unity in {lab}"));
        }

        if op.find_unity().is_some() {
            rep.check(
                tag("viii"),
                first_failure(fo.iter().zip(&restricts), |(m, rm)| {
                    let back = lift(op, rm).expect("carrier sizes agree");
                    if &back != m {
                        return Err(Counterexample::new("lift of the restriction differs from μ")
                            .subset(fw("μ", lab, m))
                            .subset(fw("μ''", lab, &back)));
                    }
                    Ok(())
                }),
            );
        } else {
            rep.unmet(tag("viii"), format!("no unity in {lab}"));
        }

        rep.check(
            tag("ix"),
            first_failure((0..fo.len()).flat_map(|i| (0..fo.len()).map(move |j| (i, j))), |(i, j)| {
                if fo[i].is_subset(&fo[j]) && !restricts[i].is_subset(&restricts[j]) {
                    return Err(Counterexample::new("μ1 ⊆ μ2 but their restrictions are not nested")
                        .subset(fw("μ1", lab, &fo[i]))
                        .subset(fw("μ2", lab, &fo[j])));
                }
                Ok(())
            }),
        );

        // intersection lemma on arbitrary fuzzy subsets, not only ideals
        let family = arbitrary_family(op.len(), chain).unwrap_or_else(|| fo.clone());
        rep.count(format!("subsets({lab})"), family.len());
        let lemma = first_failure(
            (0..family.len()).flat_map(|i| (i..family.len()).map(move |j| (i, j))),
            |(i, j)| intersection_commutes(op, &[&family[i], &family[j]], lab),
        )
        .and_then(|_| {
            let all: Vec<&FuzzySubset> = family.iter().collect();
            if all.is_empty() {
                Ok(())
            } else {
                intersection_commutes(op, &all, lab)
            }
        });
        rep.check(
            match side {
                Side::Left => "lemma3.3",
                Side::Right => "lemma3.3*",
            },
            lemma,
        );
    }
    Ok(rep.finish())
}

fn intersection_commutes(op: &OperatorSemiring, family: &[&FuzzySubset], lab: &str) -> Check {
    let restricted: Vec<FuzzySubset> = family.iter().map(|m| restrict(op, m).expect("carrier")).collect();
    let refs: Vec<&FuzzySubset> = restricted.iter().collect();
    let lhs = fuzzy_intersection(&refs).expect("same carrier");
    let rhs = restrict(op, &fuzzy_intersection(family).expect("same carrier")).expect("carrier");
    if lhs != rhs {
        let mut cx = Counterexample::new("∩ of restrictions differs from restriction of ∩");
        for (k, m) in family.iter().enumerate() {
            cx = cx.subset(fw(&format!("μ{}", k + 1), lab, m));
        }
        return Err(cx);
    }
    Ok(())
}

/// Every fuzzy subset of an `n`-element carrier with grades in `chain`, when
/// there are at most `ARBITRARY_FAMILY_LIMIT` of them.
fn arbitrary_family(n: usize, chain: &GradeChain) -> Option<Vec<FuzzySubset>> {
    let total = crate::config::saturating_pow(chain.len() as u64, n as u64);
    if total > ARBITRARY_FAMILY_LIMIT {
        return None;
    }
    let k = chain.len() as u64;
    Some(
        (0..total)
            .map(|mut code| {
                let mut grades = vec![Grade::ZERO; n];
                for slot in grades.iter_mut().rev() {
                    *slot = chain.grade((code % k) as usize);
                    code /= k;
                }
                FuzzySubset::new(grades)
            })
            .collect(),
    )
}

// Closure of an enumerated family under ⊕ and ∩, with top and bottom present.
fn lattice_closure<S: FiniteStructure + ?Sized>(s: &S, family: &[FuzzySubset], carrier: &str) -> Check {
    let set: HashSet<&FuzzySubset> = family.iter().collect();
    let n = s.order();
    let top = FuzzySubset::constant(n, Grade::ONE);
    let bottom = characteristic(&CrispSubset::from_indices(n, [0]));
    if !set.contains(&top) {
        return Err(Counterexample::new(format!("constant 1 missing from the family over {carrier}")));
    }
    if !set.contains(&bottom) {
        return Err(Counterexample::new(format!("λ_{{0}} missing from the family over {carrier}")));
    }
    for a in family {
        for b in family {
            let sum = fuzzy_sum(s, a, b).expect("same carrier");
            let meet = fuzzy_intersection(&[a, b]).expect("same carrier");
            for (op, r) in [("⊕", sum), ("∩", meet)] {
                if !set.contains(&r) {
                    return Err(Counterexample::new(format!("family over {carrier} not closed under {op}"))
                        .subset(fw("μ1", carrier, a))
                        .subset(fw("μ2", carrier, b))
                        .subset(fw("result", carrier, &r)));
                }
            }
        }
    }
    Ok(())
}

/// Lattice isomorphism between fuzzy ideals of `S` and of `L` via σ ↦ σ⁺'
/// (two-sided or right ideals), and the mirrored statement for `R`.
pub fn verify_theorem_3_8(
    g: &GammaSemiring,
    chain: &GradeChain,
    kind: IdealKind,
    caps: &Caps,
) -> Result<VerificationReport> {
    let ops = Ops::build(g, caps)?;
    let mut rep = ReportBuilder::new("th3.8", g.name(), Some(chain));
    rep.note(format!("kind: {kind} on L; {} on R", kind.mirror()));
    if kind == IdealKind::Left {
        rep.note("fuzzy left ideals of S and L are not covered by the statement; checked as stated for the requested kind");
    }
    let unities = ops.left.find_unity().is_some() && ops.right.find_unity().is_some();
    for side in [Side::Left, Side::Right] {
        let op = ops.side(side);
        let lab = carrier_label(side);
        let k = if side == Side::Left { kind } else { kind.mirror() };
        let suffix = if side == Side::Left { "" } else { "*" };
        let fs = enumerate_fuzzy_ideals(g, chain, k, caps.enumeration)?;
        let fo = enumerate_fuzzy_ideals(op.semiring(), chain, k, caps.enumeration)?;
        rep.count(format!("{}[{lab} side]", family_label(k, "S")), fs.len());
        rep.count(family_label(k, lab), fo.len());
        rep.check(format!("cor3.10 closure S{suffix}"), lattice_closure(g, &fs, "S"));
        rep.check(format!("cor3.10 closure {lab}"), lattice_closure(op.semiring(), &fo, lab));
        if !unities {
            rep.unmet(format!("bijection{suffix}"), "requires both unities");
            continue;
        }
        let lifts: Vec<FuzzySubset> = fs.iter().map(|s| lift(op, s)).collect::<Result<_>>()?;
        rep.check(format!("bijection{suffix}"), bijection_check(&fs, &lifts, &fo, lab));
        rep.check(
            format!("inclusion both ways{suffix}"),
            first_failure((0..fs.len()).flat_map(|i| (0..fs.len()).map(move |j| (i, j))), |(i, j)| {
                if fs[i].is_subset(&fs[j]) != lifts[i].is_subset(&lifts[j]) {
                    return Err(Counterexample::new("inclusion not preserved and reflected")
                        .subset(fw("σ1", "S", &fs[i]))
                        .subset(fw("σ2", "S", &fs[j])));
                }
                Ok(())
            }),
        );
        rep.check(
            format!("⊕ and ∩ preserved{suffix}"),
            first_failure((0..fs.len()).flat_map(|i| (0..fs.len()).map(move |j| (i, j))), |(i, j)| {
                let s = lift(op, &fuzzy_sum(g, &fs[i], &fs[j]).expect("carrier")).expect("carrier");
                let m = lift(op, &fuzzy_intersection(&[&fs[i], &fs[j]]).expect("carrier")).expect("carrier");
                let ring = op.semiring();
                if s != fuzzy_sum(ring, &lifts[i], &lifts[j]).expect("carrier")
                    || m != fuzzy_intersection(&[&lifts[i], &lifts[j]]).expect("carrier")
                {
                    return Err(Counterexample::new("lattice operation not preserved")
                        .subset(fw("σ1", "S", &fs[i]))
                        .subset(fw("σ2", "S", &fs[j])));
                }
                Ok(())
            }),
        );
    }
    Ok(rep.finish())
}

pub(crate) fn bijection_check(fs: &[FuzzySubset], lifts: &[FuzzySubset], fo: &[FuzzySubset], lab: &str) -> Check {
    let targets: HashSet<&FuzzySubset> = fo.iter().collect();
    let mut hit: HashSet<&FuzzySubset> = HashSet::new();
    for (s, l) in fs.iter().zip(lifts) {
        if !targets.contains(l) {
            return Err(Counterexample::new(format!("lift of σ is not among the enumerated ideals of {lab}"))
                .subset(fw("σ", "S", s))
                .subset(fw("σ'", lab, l)));
        }
        if !hit.insert(l) {
            return Err(Counterexample::new("map is not injective").subset(fw("σ", "S", s)));
        }
    }
    if let Some(missed) = fo.iter().find(|m| !hit.contains(m)) {
        return Err(Counterexample::new("map is not surjective").subset(fw("μ", lab, missed)));
    }
    Ok(())
}

/// Characteristic-function identities for crisp ideals of every kind, on
/// both operator semirings.
pub fn verify_lemmas_3_11_3_12(g: &GammaSemiring, caps: &Caps) -> Result<VerificationReport> {
    let ops = Ops::build(g, caps)?;
    let mut rep = ReportBuilder::new("lemmas", g.name(), None);
    for side in [Side::Left, Side::Right] {
        let op = ops.side(side);
        let lab = carrier_label(side);
        let suffix = if side == Side::Left { "" } else { "*" };
        for kind in [IdealKind::TwoSided, IdealKind::Left, IdealKind::Right] {
            let cs = enumerate_crisp_ideals(g, kind, caps.enumeration)?;
            let co = enumerate_crisp_ideals(op.semiring(), kind, caps.enumeration)?;
            rep.count(format!("{}[{lab} side]", crisp_label(kind, "S")), cs.len());
            rep.count(crisp_label(kind, lab), co.len());
            rep.check(
                format!("lemma3.11{suffix} {kind}"),
                first_failure(cs.iter(), |i| {
                    let image = lift_set(op, i).expect("carrier");
                    let pointwise = lift_set_pointwise(op, i).expect("carrier");
                    let cx = |what: &str| {
                        Counterexample::new(what.to_string())
                            .subset(WitnessSubset::crisp("I", "S", i, g.s_ids()))
                            .subset(WitnessSubset::crisp("I'", lab, &image, op.ids()))
                    };
                    if lift(op, &characteristic(i)).expect("carrier") != characteristic(&image) {
                        return Err(cx("lift of λ_I differs from λ of the lifted set"));
                    }
                    if image != pointwise {
                        return Err(cx("closure and pointwise lifts disagree on an ideal"));
                    }
                    if !is_crisp_ideal(op.semiring(), &image, kind) {
                        return Err(cx("lifted set is not an ideal"));
                    }
                    Ok(())
                }),
            );
            rep.check(
                format!("lemma3.12{suffix} {kind}"),
                first_failure(co.iter(), |j| {
                    let image = restrict_set(op, j).expect("carrier");
                    let cx = |what: &str| {
                        Counterexample::new(what.to_string())
                            .subset(WitnessSubset::crisp("J", lab, j, op.ids()))
                            .subset(WitnessSubset::crisp("J_S", "S", &image, g.s_ids()))
                    };
                    if restrict(op, &characteristic(j)).expect("carrier") != characteristic(&image) {
                        return Err(cx("restriction of λ_J differs from λ of the restricted set"));
                    }
                    if !is_crisp_ideal(g, &image, kind) {
                        return Err(cx("restricted set is not an ideal"));
                    }
                    Ok(())
                }),
            );
        }
    }
    Ok(rep.finish())
}

/// Crisp ideal lattices of `S` and `L` (and mirrored `R`) correspond via
/// `I ↦ I⁺'` with inverse `J ↦ J⁺`.
pub fn verify_theorem_3_15(g: &GammaSemiring, kind: IdealKind, caps: &Caps) -> Result<VerificationReport> {
    let ops = Ops::build(g, caps)?;
    let mut rep = ReportBuilder::new("th3.15", g.name(), None);
    let unities = ops.left.find_unity().is_some() && ops.right.find_unity().is_some();
    for side in [Side::Left, Side::Right] {
        let op = ops.side(side);
        let lab = carrier_label(side);
        let k = if side == Side::Left { kind } else { kind.mirror() };
        let suffix = if side == Side::Left { "" } else { "*" };
        let cs = enumerate_crisp_ideals(g, k, caps.enumeration)?;
        let co = enumerate_crisp_ideals(op.semiring(), k, caps.enumeration)?;
        rep.count(format!("{}[{lab} side]", crisp_label(k, "S")), cs.len());
        rep.count(crisp_label(k, lab), co.len());
        if !unities {
            rep.unmet(format!("bijection{suffix}"), "requires both unities");
            continue;
        }
        let images: Vec<CrispSubset> = cs.iter().map(|i| lift_set(op, i)).collect::<Result<_>>()?;
        for (i, im) in cs.iter().zip(&images) {
            rep.note(format!(
                "{{{}}} ↦ {{{}}}",
                i.ids(g.s_ids()).join(","),
                im.ids(op.ids()).join(",")
            ));
        }
        let targets: HashSet<&CrispSubset> = co.iter().collect();
        let mut hit = HashSet::new();
        let mut bij = Ok(());
        for (i, im) in cs.iter().zip(&images) {
            if !targets.contains(im) || !hit.insert(im) {
                bij = Err(Counterexample::new("I ↦ I' is not injective into the ideals of the operator semiring")
                    .subset(WitnessSubset::crisp("I", "S", i, g.s_ids())));
                break;
            }
        }
        if bij.is_ok() {
            if let Some(j) = co.iter().find(|j| !hit.contains(j)) {
                bij = Err(Counterexample::new("I ↦ I' is not surjective")
                    .subset(WitnessSubset::crisp("J", lab, j, op.ids())));
            }
        }
        rep.check(format!("bijection{suffix}"), bij);
        rep.check(
            format!("inverse{suffix}"),
            first_failure(cs.iter().zip(&images), |(i, im)| {
                if &restrict_set(op, im).expect("carrier") != i {
                    return Err(Counterexample::new("(I')⁺ ≠ I").subset(WitnessSubset::crisp("I", "S", i, g.s_ids())));
                }
                Ok(())
            })
            .and_then(|_| {
                first_failure(co.iter(), |j| {
                    let back = lift_set(op, &restrict_set(op, j).expect("carrier")).expect("carrier");
                    if &back != j {
                        return Err(Counterexample::new("(J⁺)' ≠ J").subset(WitnessSubset::crisp("J", lab, j, op.ids())));
                    }
                    Ok(())
                })
            }),
        );
        rep.check(
            format!("inclusion both ways{suffix}"),
            first_failure((0..cs.len()).flat_map(|a| (0..cs.len()).map(move |b| (a, b))), |(a, b)| {
                if cs[a].is_subset(&cs[b]) != images[a].is_subset(&images[b]) {
                    return Err(Counterexample::new("inclusion not preserved and reflected")
                        .subset(WitnessSubset::crisp("I1", "S", &cs[a], g.s_ids()))
                        .subset(WitnessSubset::crisp("I2", "S", &cs[b], g.s_ids())));
                }
                Ok(())
            }),
        );
    }
    Ok(rep.finish())
}

/// A non-constant ideal that is not constant on nonzero elements with a
/// common value below `μ(0)`. Characteristic functions are preferred since
/// they are easiest to read.
fn fuzzy_condition_violator(family: &[FuzzySubset]) -> Option<&FuzzySubset> {
    let violates = |m: &&FuzzySubset| {
        let zero = m.grade(0);
        let rest = &m.grades()[1..];
        m.is_non_constant() && rest.iter().any(|g| *g != rest[0] || *g >= zero)
    };
    let crisp = |m: &&FuzzySubset| m.grades().iter().all(|g| g.is_zero() || g.is_one());
    family.iter().filter(crisp).find(violates).or_else(|| family.iter().find(violates))
}

/// Semifield characterization for a commutative semiring, as two separate
/// implications.
pub fn verify_theorem_3_17(r: &Semiring, chain: &GradeChain, caps: &Caps) -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new("th3.17", r.name(), Some(chain));
    let semifield = match is_semifield(r) {
        Err(e) => {
            rep.unmet("commutative", e.to_string());
            return Ok(rep.finish());
        }
        Ok(v) => v,
    };
    if r.len() < 2 {
        rep.unmet("nonzero elements", "one-element semiring: the condition is vacuous");
        return Ok(rep.finish());
    }
    let family = enumerate_fuzzy_ideals(r, chain, IdealKind::TwoSided, caps.enumeration)?;
    rep.count("FI", family.len());
    let violator = fuzzy_condition_violator(&family);
    rep.note(format!("semifield (no nonzero proper ideal): {semifield}"));
    match has_inverses(r) {
        Some(inv) if inv != semifield => {
            rep.note(format!("invertibility reading disagrees: every nonzero element invertible = {inv}"));
        }
        Some(_) => {
            rep.note("invertibility reading agrees");
        }
        None => {
            rep.note("no multiplicative identity; invertibility reading not applicable");
        }
    }
    if let Some(v) = violator {
        rep.note(format!("condition fails for μ = ({})", v.labels().join(", ")));
    }
    rep.check(
        "semifield ⇒ condition",
        match (semifield, violator) {
            (true, Some(v)) => Err(Counterexample::new("semifield with a violating fuzzy ideal").subset(fw("μ", r.name(), v))),
            _ => Ok(()),
        },
    );
    rep.check(
        "condition ⇒ semifield",
        match (semifield, violator) {
            (false, None) => {
                let mut cx = Counterexample::new("condition holds but a nonzero proper ideal exists");
                if let Some(w) = semifield_witness(r) {
                    cx = cx.subset(WitnessSubset::crisp("I", r.name(), &CrispSubset::from_bits(w), r.ids()));
                }
                Err(cx)
            }
            _ => Ok(()),
        },
    );
    Ok(rep.finish())
}

/// Γ-semifield characterization for ZDF commutative Γ-semirings.
pub fn verify_theorem_3_18(g: &GammaSemiring, chain: &GradeChain, caps: &Caps) -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new("th3.18", g.name(), Some(chain));
    let family = enumerate_fuzzy_ideals(g, chain, IdealKind::TwoSided, caps.enumeration)?;
    rep.count("FI(S)", family.len());
    let violator = fuzzy_condition_violator(&family);
    if let Some(v) = violator {
        rep.note(format!("condition fails for μ = ({})", v.labels().join(", ")));
    } else {
        rep.note("condition holds for every non-constant enumerated ideal");
    }
    let commutative = is_commutative(g);
    let zdf = is_zdf(g);
    if !commutative {
        rep.unmet("commutative", "Γ-semiring is not commutative");
    }
    if !zdf {
        let (a, al, b) = zdf_witness(g).expect("not zdf");
        rep.unmet(
            "zero-divisor free",
            format!("{} {} {} = 0", g.s_ids()[a], g.g_ids()[al], g.s_ids()[b]),
        );
    }
    if !commutative || !zdf {
        if let Ok(gsf) = is_gamma_semifield(g) {
            rep.note(format!("Γ-semifield: {gsf}"));
        }
        return Ok(rep.finish());
    }
    let gsf = is_gamma_semifield(g).expect("commutative");
    rep.note(format!("Γ-semifield: {gsf}"));
    rep.check(
        "Γ-semifield ⇒ condition",
        match (gsf, violator) {
            (true, Some(v)) => Err(Counterexample::new("Γ-semifield with a violating fuzzy ideal").subset(fw("μ", "S", v))),
            _ => Ok(()),
        },
    );
    rep.check(
        "condition ⇒ Γ-semifield",
        match (gsf, violator) {
            (false, None) => {
                let mut cx = Counterexample::new("condition holds but S is not a Γ-semifield");
                if let Some((a, al)) = crate::structure::gamma_semifield_witness(g) {
                    cx = cx.element(g.s_ids()[a].clone()).element(g.g_ids()[al].clone());
                }
                Err(cx)
            }
            _ => Ok(()),
        },
    );
    Ok(rep.finish())
}

/// `S` is a Γ-semifield iff `L` is a semifield, for ZDF commutative `S`;
/// the fuzzy characterizations are re-run on both sides.
pub fn verify_semifield_transfer(g: &GammaSemiring, chain: &GradeChain, caps: &Caps) -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new("transfer-semifield", g.name(), Some(chain));
    let l = build_operator_semiring(g, Side::Left, caps)?;
    let gsf = is_gamma_semifield(g);
    let lsf = is_semifield(l.semiring());
    rep.count("|L|", l.len());
    match (&gsf, &lsf) {
        (Ok(a), Ok(b)) => {
            rep.note(format!("Γ-semifield(S): {a}; semifield(L): {b}"));
        }
        _ => {
            rep.note(format!("Γ-semifield(S): {gsf:?}; semifield(L): {lsf:?}"));
        }
    }
    let mut gated = false;
    if !is_commutative(g) {
        rep.unmet("commutative", "Γ-semiring is not commutative");
        gated = true;
    }
    if !is_zdf(g) {
        rep.unmet("zero-divisor free", "Γ-semiring has zero divisors");
        gated = true;
    }
    if lsf.is_err() {
        rep.unmet("L commutative", "left operator semiring is not commutative");
        gated = true;
    }
    if gated {
        return Ok(rep.finish());
    }
    let (gsf, lsf) = (gsf.expect("commutative"), lsf.expect("commutative"));
    rep.check(
        "Γ-semifield(S) ⇔ semifield(L)",
        if gsf == lsf {
            Ok(())
        } else {
            Err(Counterexample::new(format!("Γ-semifield(S) = {gsf} but semifield(L) = {lsf}")))
        },
    );
    let fs = enumerate_fuzzy_ideals(g, chain, IdealKind::TwoSided, caps.enumeration)?;
    let fl = enumerate_fuzzy_ideals(l.semiring(), chain, IdealKind::TwoSided, caps.enumeration)?;
    rep.count("FI(S)", fs.len());
    rep.count("FI(L)", fl.len());
    let cond_s = fuzzy_condition_violator(&fs);
    let cond_l = fuzzy_condition_violator(&fl);
    rep.check(
        "fuzzy condition on S matches Γ-semifield(S)",
        if cond_s.is_none() == gsf {
            Ok(())
        } else {
            let mut cx = Counterexample::new("fuzzy condition on S disagrees with the Γ-semifield predicate");
            if let Some(v) = cond_s {
                cx = cx.subset(fw("μ", "S", v));
            }
            Err(cx)
        },
    );
    rep.check(
        "fuzzy condition on L matches semifield(L)",
        if cond_l.is_none() == lsf {
            Ok(())
        } else {
            let mut cx = Counterexample::new("fuzzy condition on L disagrees with the semifield predicate");
            if let Some(v) = cond_l {
                cx = cx.subset(fw("μ", "L", v));
            }
            Err(cx)
        },
    );
    Ok(rep.finish())
}

/// Ideal generated by an element, exposed for diagnostics.
pub fn principal_ideal(r: &Semiring, x: usize) -> CrispSubset {
    CrispSubset::from_bits(generated_ideal(r, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{boolean, boolean_semiring, zero_product, zn, zn_semiring};
    use crate::verify::Status;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn gated_clauses_without_unity() {
        let rep = verify_prop_3_4(&zero_product(), &GradeChain::ternary(), &caps()).unwrap();
        assert_eq!(rep.check("(ii)").unwrap().status, Status::PreconditionUnmet);
        assert_eq!(rep.check("(viii)").unwrap().status, Status::PreconditionUnmet);
        assert_eq!(rep.check("(i) non-constant").unwrap().status, Status::PreconditionUnmet);
        assert_eq!(rep.check("(i)").unwrap().status, Status::Pass);
        assert_ne!(rep.status, Status::Fail);
    }

    #[test]
    fn th3_17_trivial_semiring_is_gated() {
        let r = Semiring::new("0", vec!["0".into()], vec![0], vec![0]).unwrap();
        let rep = verify_theorem_3_17(&r, &GradeChain::ternary(), &caps()).unwrap();
        assert_eq!(rep.status, Status::PreconditionUnmet);
    }

    #[test]
    fn th3_17_examples() {
        for r in [boolean_semiring(), zn_semiring(4).unwrap(), zn_semiring(2).unwrap()] {
            let rep = verify_theorem_3_17(&r, &GradeChain::ternary(), &caps()).unwrap();
            assert_eq!(rep.status, Status::Pass, "{}", r.name());
        }
    }

    #[test]
    fn violator_detection() {
        let fam = vec![
            FuzzySubset::new(vec![Grade::ONE, Grade::ONE]),
            FuzzySubset::new(vec![Grade::ONE, Grade::half()]),
        ];
        assert!(fuzzy_condition_violator(&fam).is_none());
        let bad = vec![FuzzySubset::new(vec![Grade::ONE, Grade::ZERO, Grade::ONE])];
        assert!(fuzzy_condition_violator(&bad).is_some());
    }

    #[test]
    fn bijection_check_reports_missing_target() {
        let a = FuzzySubset::new(vec![Grade::ONE, Grade::ZERO]);
        let b = FuzzySubset::new(vec![Grade::ONE, Grade::ONE]);
        let err = bijection_check(&[a.clone()], &[a.clone()], &[a.clone(), b], "L").unwrap_err();
        assert_eq!(err.check, "map is not surjective");
        let err = bijection_check(&[a.clone(), a.clone()], &[a.clone(), a.clone()], &[a], "L").unwrap_err();
        assert_eq!(err.check, "map is not injective");
    }

    #[test]
    fn lattice_closure_detects_missing_top() {
        let z4 = zn(4).unwrap();
        let fam = vec![characteristic(&CrispSubset::from_indices(4, [0]))];
        assert!(lattice_closure(&z4, &fam, "S").is_err());
        let gb = boolean();
        let ok = enumerate_fuzzy_ideals(&gb, &GradeChain::ternary(), IdealKind::TwoSided, 100).unwrap();
        assert!(lattice_closure(&gb, &ok, "S").is_ok());
    }

    #[test]
    fn arbitrary_family_size() {
        assert_eq!(arbitrary_family(2, &GradeChain::ternary()).unwrap().len(), 9);
        assert!(arbitrary_family(16, &GradeChain::ternary()).is_none());
    }
}
