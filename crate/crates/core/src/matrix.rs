//! Matrix Γₙ-semirings over a finite base, the operator–matrix
//! isomorphisms, and the entrywise lift of fuzzy subsets.
//!
//! An `n × n` matrix over a carrier of size `k` is encoded as the integer
//! whose base-`k` digits are its entries in row-major order, first entry
//! most significant. The zero matrix is therefore index 0.

use std::collections::HashSet;

use crate::config::{saturating_pow, Caps};
use crate::error::{Error, Result};
use crate::fuzzy::{enumerate_fuzzy_ideals, is_fuzzy_ideal, FuzzySubset, IdealKind};
use crate::grade::{Grade, GradeChain};
use crate::operators::{build_operator_semiring, OperatorSemiring, Side};
use crate::par;
use crate::structure::{
    gamma_validation_work, semiring_validation_work, validate_gamma_semiring, validate_semiring,
    GammaSemiring, Semiring,
};
use crate::verify::{bijection_check, Counterexample, ReportBuilder, VerificationReport, WitnessSubset};

/// Outcome of the axiom scan run when a matrix instance is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixValidation {
    Passed,
    /// Full scan would evaluate `work` tuples, above the validation cap.
    Skipped { work: u64, cap: u64 },
}

#[derive(Debug, Clone)]
pub struct MatrixGammaSemiring {
    pub n: usize,
    pub base_name: String,
    pub gamma: GammaSemiring,
    pub validation: MatrixValidation,
}

impl MatrixGammaSemiring {
    pub fn s_len(&self) -> usize {
        self.gamma.s_len()
    }

    pub fn g_len(&self) -> usize {
        self.gamma.g_len()
    }
}

/// Row-major entries of matrix `code` over a `k`-element carrier.
pub fn decode(mut code: usize, k: usize, cells: usize) -> Vec<usize> {
    let mut out = vec![0; cells];
    for slot in out.iter_mut().rev() {
        *slot = code % k;
        code /= k;
    }
    out
}

pub fn encode(entries: &[usize], k: usize) -> usize {
    entries.iter().fold(0, |acc, &d| acc * k + d)
}

fn matrix_ids(count: usize) -> Vec<String> {
    (0..count).map(|k| format!("m{k}")).collect()
}

fn carrier_size(k: usize, n: usize, caps: &Caps) -> Result<usize> {
    let size = saturating_pow(k as u64, (n * n) as u64);
    if size > caps.matrix_carrier {
        return Err(Error::CapExceeded {
            what: "matrix carrier",
            needed: format!("{k}^{}", n * n),
            cap: caps.matrix_carrier,
        });
    }
    Ok(size as usize)
}

/// `Sₙ` as a Γₙ-semiring: entrywise addition and
/// `(A Δ B)_ij = Σ_{k,l} a_ik δ_kl b_lj`.
pub fn build_matrix_gamma(base: &GammaSemiring, n: usize, caps: &Caps) -> Result<MatrixGammaSemiring> {
    if n == 0 {
        return Err(Error::InvalidInstance("matrix size must be positive".into()));
    }
    let (bs, bg) = (base.s_len(), base.g_len());
    let ns = carrier_size(bs, n, caps)?;
    let ng = carrier_size(bg, n, caps)?;
    let cells = n * n;
    let sd: Vec<Vec<usize>> = (0..ns).map(|k| decode(k, bs, cells)).collect();
    let gd: Vec<Vec<usize>> = (0..ng).map(|k| decode(k, bg, cells)).collect();

    let entrywise = |digits: &[Vec<usize>], k: usize, add: &dyn Fn(usize, usize) -> usize| {
        let len = digits.len();
        let mut t = Vec::with_capacity(len * len);
        for a in digits {
            for b in digits {
                let c: Vec<usize> = a.iter().zip(b).map(|(&x, &y)| add(x, y)).collect();
                t.push(encode(&c, k) as u32);
            }
        }
        t
    };
    let add_s = entrywise(&sd, bs, &|x, y| base.add_s(x, y));
    let add_g = entrywise(&gd, bg, &|x, y| base.add_g(x, y));

    let mut prod = vec![0u32; ns * ng * ns];
    par::fill_chunks(&mut prod, ns, |row, out| {
        let (a, d) = (&sd[row / ng], &gd[row % ng]);
        for (bi, slot) in out.iter_mut().enumerate() {
            let b = &sd[bi];
            // entries are produced in row-major order, so encode on the fly
            let mut code = 0;
            for i in 0..n {
                for j in 0..n {
                    let mut acc = 0;
                    for k in 0..n {
                        for l in 0..n {
                            let t = base.prod(a[i * n + k], d[k * n + l], b[l * n + j]);
                            acc = base.add_s(acc, t);
                        }
                    }
                    code = code * bs + acc;
                }
            }
            *slot = code as u32;
        }
    });

    let gamma = GammaSemiring::new(
        format!("{}_{n}", base.name()),
        matrix_ids(ns),
        matrix_ids(ng),
        add_s,
        add_g,
        prod,
    )?;
    let work = gamma_validation_work(&gamma);
    let validation = if work <= caps.validation {
        if let Some(v) = validate_gamma_semiring(&gamma).violations().first() {
            return Err(Error::InvalidInstance(format!(
                "matrix instance violates {}: {}",
                v.axiom.law(),
                v.describe(gamma.s_ids(), gamma.g_ids())
            )));
        }
        MatrixValidation::Passed
    } else {
        MatrixValidation::Skipped { work, cap: caps.validation }
    };
    Ok(MatrixGammaSemiring { n, base_name: base.name().to_string(), gamma, validation })
}

/// The semiring of `n × n` matrices over `r`.
pub fn matrix_semiring(r: &Semiring, n: usize, caps: &Caps) -> Result<Semiring> {
    let k = r.len();
    let size = carrier_size(k, n, caps)?;
    let cells = n * n;
    let digits: Vec<Vec<usize>> = (0..size).map(|c| decode(c, k, cells)).collect();
    let mut add = vec![0u32; size * size];
    let mut mul = vec![0u32; size * size];
    par::fill_chunks(&mut add, size, |i, out| {
        for (j, slot) in out.iter_mut().enumerate() {
            let c: Vec<usize> = digits[i].iter().zip(&digits[j]).map(|(&x, &y)| r.add(x, y)).collect();
            *slot = encode(&c, k) as u32;
        }
    });
    par::fill_chunks(&mut mul, size, |i, out| {
        let a = &digits[i];
        for (j, slot) in out.iter_mut().enumerate() {
            let b = &digits[j];
            let mut c = vec![0usize; cells];
            for u in 0..n {
                for v in 0..n {
                    let mut acc = 0;
                    for t in 0..n {
                        acc = r.add(acc, r.mul(a[u * n + t], b[t * n + v]));
                    }
                    c[u * n + v] = acc;
                }
            }
            *slot = encode(&c, k) as u32;
        }
    });
    Semiring::new(format!("{}_{n}", r.name()), matrix_ids(size), add, mul)
}

/// `μₙ(A) = min` of `μ` over the entries of `A`.
pub fn lift_fuzzy_to_matrix(mu: &FuzzySubset, n: usize) -> FuzzySubset {
    let k = mu.len();
    let cells = n * n;
    let size = saturating_pow(k as u64, cells as u64) as usize;
    FuzzySubset::new(
        (0..size)
            .map(|c| decode(c, k, cells).into_iter().map(|d| mu.grade(d)).min().unwrap_or(Grade::ONE))
            .collect(),
    )
}

/// Report for building `Sₙ` and scanning its axioms.
pub fn matrix_build_report(base: &GammaSemiring, n: usize, caps: &Caps) -> Result<VerificationReport> {
    let m = build_matrix_gamma(base, n, caps)?;
    let mut rep = ReportBuilder::new("matrix.build", base.name(), None);
    rep.count("|S_n|", m.s_len()).count("|Γ_n|", m.g_len());
    match m.validation {
        MatrixValidation::Passed => {
            rep.check("axioms", Ok(()));
        }
        MatrixValidation::Skipped { work, cap } => {
            rep.unmet("axioms", format!("full scan needs {work} evaluations, above cap {cap}"));
        }
    }
    Ok(rep.finish())
}

// Matrix over the base operator semiring read off an operator of Sₙ:
// left entries M_ul = a ↦ f(a at (l, 0))_(u, 0), right entries
// N_jv = a ↦ f(a at (0, j))_(0, v).
fn read_matrix(f: &[u32], side: Side, op: &OperatorSemiring, n: usize) -> Option<Vec<usize>> {
    let bs = op.s_len();
    let cells = n * n;
    let mut out = vec![0; cells];
    for u in 0..n {
        for l in 0..n {
            let values: Vec<u32> = (0..bs)
                .map(|a| {
                    let mut e = vec![0; cells];
                    match side {
                        Side::Left => e[l * n] = a,
                        Side::Right => e[u] = a,
                    }
                    let image = decode(f[encode(&e, bs)] as usize, bs, cells);
                    (match side {
                        Side::Left => image[u * n],
                        Side::Right => image[l],
                    }) as u32
                })
                .collect();
            out[u * n + l] = op.index_of(&values)?;
        }
    }
    Some(out)
}

// Left: (MA)_uj = Σ_l M_ul(a_lj). Right: (AN)_iv = Σ_j N_jv(a_ij).
fn act(m: &[usize], a: &[usize], side: Side, op: &OperatorSemiring, base: &GammaSemiring, n: usize) -> Vec<usize> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0;
            for t in 0..n {
                let v = match side {
                    Side::Left => op.element(m[i * n + t]).apply(a[t * n + j]),
                    Side::Right => op.element(m[t * n + j]).apply(a[i * n + t]),
                };
                acc = base.add_s(acc, v);
            }
            c[i * n + j] = acc;
        }
    }
    c
}

/// Operator semiring of `Sₙ` against `n × n` matrices over the base
/// operator semiring: the entry-reading map must be a well-defined
/// semiring isomorphism that sends each generator `[X, Δ]` to
/// `(Σ_t [x_ut, δ_tl])_ul` (left) or `[Δ, X]` to `(Σ_t [δ_jt, x_tv])_jv` (right).
pub fn check_operator_matrix_iso(base: &GammaSemiring, n: usize, side: Side, caps: &Caps) -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new(format!("matrix.iso.{side}"), base.name(), None);
    let mat = build_matrix_gamma(base, n, caps)?;
    let op = build_operator_semiring(base, side, caps)?;
    let opn = build_operator_semiring(&mat.gamma, side, caps)?;
    let ln = matrix_semiring(op.semiring(), n, caps)?;
    let lab = match side {
        Side::Left => "L",
        Side::Right => "R",
    };
    rep.count(format!("|{lab}|"), op.len());
    rep.count(format!("|{lab}(S_n)|"), opn.len());
    rep.count(format!("|{lab}_n|"), ln.len());
    if op.len() == 1 {
        rep.note("degenerate: both sides are the one-element zero semiring");
    }
    let work = semiring_validation_work(&ln);
    if work <= caps.validation {
        let outcome = validate_semiring(&ln);
        rep.check(
            format!("{lab}_n semiring axioms"),
            match outcome.violations().first() {
                None => Ok(()),
                Some(v) => Err(Counterexample::new(format!("{lab}_n violates {}", v.axiom.law()))
                    .element(v.describe(ln.ids(), &[]))),
            },
        );
    } else {
        rep.unmet(format!("{lab}_n semiring axioms"), format!("scan needs {work} evaluations"));
    }

    let cells = n * n;
    let m = op.len();
    let mut phi = Vec::with_capacity(opn.len());
    let mut defined = Ok(());
    for (i, f) in opn.elements().iter().enumerate() {
        match read_matrix(&f.values, side, &op, n) {
            Some(entries) => phi.push(entries),
            None => {
                defined = Err(Counterexample::new("an entry of the read-off matrix is not an operator of the base")
                    .element(opn.ids()[i].clone()));
                break;
            }
        }
    }
    if defined.is_ok() {
        let bs = base.s_len();
        let bad = par::find_first(opn.len(), |i| {
            let f = &opn.element(i).values;
            (0..mat.s_len())
                .find(|&a| {
                    let ad = decode(a, bs, cells);
                    encode(&act(&phi[i], &ad, side, &op, base, n), bs) != f[a] as usize
                })
                .map(|a| (i, a))
        });
        if let Some((i, a)) = bad {
            defined = Err(Counterexample::new("read-off matrix does not reproduce the operator's action")
                .element(opn.ids()[i].clone())
                .element(mat.gamma.s_ids()[a].clone()));
        }
    }
    let ok = defined.is_ok();
    rep.check("well-defined", defined);
    if !ok {
        return Ok(rep.finish());
    }
    let codes: Vec<usize> = phi.iter().map(|e| encode(e, m)).collect();

    let mut seen = HashSet::new();
    let mut bij = Ok(());
    for (i, &c) in codes.iter().enumerate() {
        if !seen.insert(c) {
            bij = Err(Counterexample::new("two operators map to the same matrix").element(opn.ids()[i].clone()));
            break;
        }
    }
    if bij.is_ok() {
        if let Some(missing) = (0..ln.len()).find(|c| !seen.contains(c)) {
            bij = Err(Counterexample::new("matrix not hit by any operator").element(ln.ids()[missing].clone()));
        }
    }
    rep.check("bijective", bij);

    let r = opn.semiring();
    let pairs = (0..opn.len()).flat_map(|i| (0..opn.len()).map(move |j| (i, j)));
    let mut add_ok = Ok(());
    let mut mul_ok = Ok(());
    for (i, j) in pairs {
        if add_ok.is_ok() && codes[r.add(i, j)] != ln.add(codes[i], codes[j]) {
            add_ok = Err(Counterexample::new("addition not preserved")
                .element(r.ids()[i].clone())
                .element(r.ids()[j].clone()));
        }
        if mul_ok.is_ok() && codes[r.mul(i, j)] != ln.mul(codes[i], codes[j]) {
            mul_ok = Err(Counterexample::new("multiplication not preserved")
                .element(r.ids()[i].clone())
                .element(r.ids()[j].clone()));
        }
    }
    rep.check("preserves +", add_ok);
    rep.check("preserves ·", mul_ok);
    rep.check(
        "preserves 0",
        if codes[0] == 0 && opn.element(0).is_zero() {
            Ok(())
        } else {
            Err(Counterexample::new("zero operator not sent to the zero matrix").element(opn.ids()[0].clone()))
        },
    );

    // generator images
    let bs = base.s_len();
    let bg = base.g_len();
    let gens = mat.s_len() * mat.g_len();
    rep.count("generators", gens);
    let bad = par::find_first(gens, |k| {
        let (x, d) = (k / mat.g_len(), k % mat.g_len());
        let xd = decode(x, bs, cells);
        let dd = decode(d, bg, cells);
        let mut expect = vec![0; cells];
        for u in 0..n {
            for l in 0..n {
                let mut acc = 0;
                for t in 0..n {
                    let e = match side {
                        Side::Left => op.pair_element(xd[u * n + t], dd[t * n + l]),
                        Side::Right => op.pair_element(xd[t * n + l], dd[u * n + t]),
                    };
                    acc = op.semiring().add(acc, e);
                }
                expect[u * n + l] = acc;
            }
        }
        (codes[opn.pair_element(x, d)] != encode(&expect, m)).then_some((x, d))
    });
    rep.check(
        "generator images",
        match bad {
            None => Ok(()),
            Some((x, d)) => Err(Counterexample::new("generator image differs from the block sum of base generators")
                .element(mat.gamma.s_ids()[x].clone())
                .element(mat.gamma.g_ids()[d].clone())),
        },
    );
    Ok(rep.finish())
}

/// `μ ↦ μₙ` from fuzzy ideals of the base into fuzzy ideals of `Sₙ`:
/// ideal-valued, injective, inclusion-preserving, and, when the matrix-side
/// enumeration fits the cap, bijective with matching cardinalities.
pub fn verify_theorem_3_19(base: &GammaSemiring, n: usize, chain: &GradeChain, caps: &Caps) -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new("th3.19", base.name(), Some(chain));
    let mat = build_matrix_gamma(base, n, caps)?;
    let sn = &mat.gamma;
    let fs = enumerate_fuzzy_ideals(base, chain, IdealKind::TwoSided, caps.enumeration)?;
    rep.count("FI(S)", fs.len());
    let lifted: Vec<FuzzySubset> = fs.iter().map(|mu| lift_fuzzy_to_matrix(mu, n)).collect();
    let carrier = sn.name().to_string();

    let bad = par::find_first(lifted.len(), |i| {
        let ok = lifted[i].grade(0) == Grade::ONE && is_fuzzy_ideal(sn, &lifted[i], IdealKind::TwoSided);
        (!ok).then_some(i)
    });
    rep.check(
        "μ_n is a fuzzy ideal",
        match bad {
            None => Ok(()),
            Some(i) => Err(Counterexample::new("μ_n is not a fuzzy ideal of the matrix Γ-semiring")
                .subset(WitnessSubset::fuzzy("μ", "S", &fs[i]))),
        },
    );
    let mut seen = HashSet::new();
    let mut inj = Ok(());
    for (mu, l) in fs.iter().zip(&lifted) {
        if !seen.insert(l) {
            inj = Err(Counterexample::new("two ideals have the same μ_n").subset(WitnessSubset::fuzzy("μ", "S", mu)));
            break;
        }
    }
    rep.check("injective", inj);
    let mut incl = Ok(());
    'outer: for i in 0..fs.len() {
        for j in 0..fs.len() {
            if fs[i].is_subset(&fs[j]) != lifted[i].is_subset(&lifted[j]) {
                incl = Err(Counterexample::new("inclusion not preserved and reflected")
                    .subset(WitnessSubset::fuzzy("μ1", "S", &fs[i]))
                    .subset(WitnessSubset::fuzzy("μ2", "S", &fs[j])));
                break 'outer;
            }
        }
    }
    rep.check("inclusion-preserving", incl);

    let unities = [Side::Left, Side::Right]
        .iter()
        .map(|&side| build_operator_semiring(base, side, caps).map(|op| op.find_unity().is_some()))
        .collect::<Result<Vec<bool>>>()?;
    if unities.contains(&false) {
        rep.unmet("surjective", "requires unities in both operator semirings");
        rep.unmet("cardinality", "requires unities in both operator semirings");
        return Ok(rep.finish());
    }
    let candidates = saturating_pow(chain.len() as u64, sn.s_len() as u64 - 1);
    if candidates > caps.enumeration {
        rep.unmet(
            "surjective",
            format!("skipped (cap): {}^{} candidates exceed {}", chain.len(), sn.s_len() - 1, caps.enumeration),
        );
        rep.unmet("cardinality", "matrix-side enumeration skipped (cap)");
        rep.note("injective + inclusion-preserving verified; surjectivity skipped (cap)");
        return Ok(rep.finish());
    }
    let fm = enumerate_fuzzy_ideals(sn, chain, IdealKind::TwoSided, caps.enumeration)?;
    rep.count("FI(S_n)", fm.len());
    rep.check("surjective", bijection_check(&fs, &lifted, &fm, &carrier));
    rep.check(
        "cardinality",
        if fs.len() == fm.len() {
            Ok(())
        } else {
            Err(Counterexample::new(format!("|FI(S)| = {} but |FI(S_n)| = {}", fs.len(), fm.len())))
        },
    );
    Ok(rep.finish())
}
