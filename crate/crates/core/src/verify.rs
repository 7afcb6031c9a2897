//! Truncated verification suites for the structural results about the two
//! algebras, each producing a list of named checks.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::autos::{
    check_div_equivariance, conjugate, conjugate_via_jacobian, jacobian, jacobian_det, transformed_partials,
};
use crate::closure::{
    bracket_closure, cartan_truncation, centralizer, derived_subalgebra, div0_generators, divc_generators,
    euler_differences, eulers, first_missing, ideal_closure, module_orbit, normalizer, partials, span_of, span_sum,
};
use crate::error::{Error, Result};
use crate::identities::check_all;
use crate::linspan::{divc_oracle, divkernel_oracle, enumerate_basis, BasisSpec, SpanSpace};
use crate::poly::{Monomial, Polynomial, Rational};
use crate::random::{random_combination, random_derivation, random_poly, random_tame, seeded};
use crate::vecfield::{Derivation, DivClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Theorem {
    BasisLemma,
    GenDiv0,
    GenDivc,
    Minimality,
    Simplicity,
    Derived,
    Cartan,
    Equivariance,
    ModuleSimple,
    Identities,
}

impl Theorem {
    pub const ALL: [Theorem; 10] = [
        Theorem::BasisLemma,
        Theorem::GenDiv0,
        Theorem::GenDivc,
        Theorem::Minimality,
        Theorem::Simplicity,
        Theorem::Derived,
        Theorem::Cartan,
        Theorem::Equivariance,
        Theorem::ModuleSimple,
        Theorem::Identities,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Theorem::BasisLemma => "basis-lemma",
            Theorem::GenDiv0 => "gen-div0",
            Theorem::GenDivc => "gen-divc",
            Theorem::Minimality => "minimality",
            Theorem::Simplicity => "simplicity",
            Theorem::Derived => "derived",
            Theorem::Cartan => "cartan",
            Theorem::Equivariance => "equivariance",
            Theorem::ModuleSimple => "module-simple",
            Theorem::Identities => "identities",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub theorem: Theorem,
    pub n: usize,
    pub cutoff: u32,
    pub checks: Vec<CheckResult>,
}

impl Report {
    fn new(theorem: Theorem, n: usize, cutoff: u32) -> Self {
        Report {
            theorem,
            n,
            cutoff,
            checks: Vec::new(),
        }
    }

    fn pass_if(&mut self, check: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        self.checks.push(CheckResult {
            check: check.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: if ok { None } else { Some(witness()) },
        });
    }

    fn push(&mut self, check: impl Into<String>, failure: Option<String>) {
        let ok = failure.is_none();
        self.checks.push(CheckResult {
            check: check.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: failure,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    /// The list of `{check, status, witness?}` objects.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.checks).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} (n = {}, cutoff = {}): {}\n",
            self.theorem,
            self.n,
            self.cutoff,
            if self.passed() { "pass" } else { "FAIL" }
        );
        for c in &self.checks {
            match (&c.status, &c.witness) {
                (Status::Pass, _) => out.push_str(&format!("  pass  {}\n", c.check)),
                (Status::Fail, Some(w)) => out.push_str(&format!("  FAIL  {}: {}\n", c.check, w)),
                (Status::Fail, None) => out.push_str(&format!("  FAIL  {}\n", c.check)),
            }
        }
        out
    }
}

/// Knobs for the randomized suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random trials for `equivariance`.
    pub trials: usize,
    /// Random elements for `simplicity`.
    pub samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0,
            trials: 200,
            samples: 20,
        }
    }
}

/// Runs the suite for `theorem` in `n` variables at cutoff `cutoff`.
pub fn verify_theorem(theorem: Theorem, n: usize, cutoff: u32, opts: &VerifyOptions) -> Result<Report> {
    if n == 0 {
        return Err(Error::Malformed("n must be at least 1".into()));
    }
    let needs_two = matches!(
        theorem,
        Theorem::GenDiv0 | Theorem::GenDivc | Theorem::Minimality | Theorem::Cartan
    );
    if needs_two && n < 2 {
        return Err(Error::Malformed(format!("{theorem} needs n >= 2")));
    }
    let needs_headroom = matches!(theorem, Theorem::GenDiv0 | Theorem::GenDivc | Theorem::Derived);
    if needs_headroom && cutoff == 0 {
        return Err(Error::Malformed(format!("{theorem} needs cutoff >= 1")));
    }
    let mut r = Report::new(theorem, n, cutoff);
    match theorem {
        Theorem::BasisLemma => basis_lemma(&mut r, n, cutoff),
        Theorem::GenDiv0 => generation(&mut r, n, cutoff, false),
        Theorem::GenDivc => generation(&mut r, n, cutoff, true),
        Theorem::Minimality => minimality(&mut r, n, cutoff),
        Theorem::Simplicity => simplicity(&mut r, n, cutoff, opts),
        Theorem::Derived => derived(&mut r, n, cutoff),
        Theorem::Cartan => cartan(&mut r, n, cutoff),
        Theorem::Equivariance => equivariance(&mut r, n, cutoff, opts),
        Theorem::ModuleSimple => module_simple(&mut r, n, cutoff, opts),
        Theorem::Identities => identities(&mut r, n, cutoff),
    }
    Ok(r)
}

pub fn verify_by_tag(tag: &str, n: usize, cutoff: u32, opts: &VerifyOptions) -> Result<Report> {
    verify_theorem(tag.parse()?, n, cutoff, opts)
}

fn missing_witness(space: &SpanSpace, targets: &[Derivation]) -> Option<String> {
    first_missing(space, targets).map(|d| format!("missing {d}"))
}

fn basis_lemma(r: &mut Report, n: usize, cutoff: u32) {
    for d in 0..=cutoff {
        let b0 = enumerate_basis(&BasisSpec::div0(n, d));
        let s0 = span_of(n, &b0);
        let o0 = divkernel_oracle(n, d);
        r.pass_if(format!("div0 D={d}: basis is independent"), s0.dim() == b0.len(), || {
            format!("{} elements span dimension {}", b0.len(), s0.dim())
        });
        r.pass_if(
            format!("div0 D={d}: span equals divergence kernel (dim {})", o0.dim()),
            s0.same_span(&o0),
            || format!("basis dim {}, kernel dim {}", s0.dim(), o0.dim()),
        );
        let bc = enumerate_basis(&BasisSpec::divc(n, d));
        let sc = span_of(n, &bc);
        let oc = divc_oracle(n, d);
        r.pass_if(format!("divc D={d}: one dimension more than div0"), sc.dim() == s0.dim() + 1, || {
            format!("divc dim {}, div0 dim {}", sc.dim(), s0.dim())
        });
        r.pass_if(format!("divc D={d}: span equals constant-divergence space"), sc.same_span(&oc), || {
            format!("basis dim {}, oracle dim {}", sc.dim(), oc.dim())
        });
        let bad = b0.iter().find(|b| b.classify() != DivClass::Zero);
        r.pass_if(format!("div0 D={d}: every basis element has zero divergence"), bad.is_none(), || {
            format!("{}", bad.unwrap())
        });
    }
    let h1 = Derivation::euler(n, 0).expect("n >= 1");
    let class = h1.classify();
    r.pass_if("H1 has divergence 1", class == DivClass::Constant(Rational::from_integer(1.into())), || {
        format!("classified as {class}")
    });
}

fn generation(r: &mut Report, n: usize, cutoff: u32, constant: bool) {
    let (gens, target) = if constant {
        (divc_generators(n), BasisSpec::divc(n, cutoff - 1))
    } else {
        (div0_generators(n), BasisSpec::div0(n, cutoff - 1))
    };
    let c = bracket_closure(&gens, cutoff).expect("nonempty");
    r.pass_if("closure saturates", c.saturated, || format!("stopped after {} rounds", c.rounds));
    r.push(
        format!("closure at D={cutoff} contains the {} basis at D={}", target.algebra, cutoff - 1),
        missing_witness(&c.space, &enumerate_basis(&target)),
    );
    let rows = c.space.rows();
    let outside = rows.iter().find(|d| match d.classify() {
        DivClass::Zero => false,
        DivClass::Constant(_) => !constant,
        DivClass::NonConstant(_) => true,
    });
    r.pass_if(format!("closure lies in {}", target.algebra), outside.is_none(), || {
        format!("{}", outside.unwrap())
    });
}

fn minimality(r: &mut Report, n: usize, cutoff: u32) {
    for constant in [false, true] {
        let gens = if constant { divc_generators(n) } else { div0_generators(n) };
        let name = if constant { "divc" } else { "div0" };
        for (k, g) in gens.iter().enumerate() {
            let rest: Vec<Derivation> = gens.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, d)| d.clone()).collect();
            let c = bracket_closure(&rest, cutoff).expect("nonempty");
            r.pass_if(
                format!("{name}: closure without {g} omits it"),
                !c.contains(g),
                || format!("closure of the remaining generators (dim {}) contains {g}", c.dim()),
            );
        }
    }
}

fn simplicity(r: &mut Report, n: usize, cutoff: u32, opts: &VerifyOptions) {
    let amb = BasisSpec::div0(n, cutoff);
    let basis = enumerate_basis(&amb);
    let ds = partials(n);
    let mut elems: Vec<(String, Derivation)> = basis
        .iter()
        .filter(|b| b.degree().at_most(2))
        .map(|b| (format!("basis element {b}"), b.clone()))
        .collect();
    let mut rng = seeded(opts.seed);
    let mut k = 0;
    while k < opts.samples {
        let d = random_combination(&mut rng, &basis, 4);
        if d.is_zero() {
            continue;
        }
        k += 1;
        elems.push((format!("random element {k}"), d));
    }
    for (label, a) in elems {
        let c = ideal_closure(&a, &amb).expect("valid element of the ambient algebra");
        r.push(
            format!("ideal of {label} contains all partials"),
            missing_witness(&c.space, &ds).map(|w| format!("{w} from the ideal of {a}")),
        );
    }
}

fn derived(r: &mut Report, n: usize, cutoff: u32) {
    let dc = derived_subalgebra(&BasisSpec::divc(n, cutoff));
    r.push(
        format!("[divc, divc] at D={cutoff} contains the div0 basis at D={}", cutoff - 1),
        missing_witness(&dc, &enumerate_basis(&BasisSpec::div0(n, cutoff - 1))),
    );
    let rows = dc.rows();
    let bad = rows.iter().find(|d| d.classify() != DivClass::Zero);
    r.pass_if("[divc, divc] has zero divergence", bad.is_none(), || format!("{}", bad.unwrap()));
    let d0 = derived_subalgebra(&BasisSpec::div0(n, cutoff));
    if n == 1 {
        r.pass_if("[div0, div0] = 0 for n = 1", d0.dim() == 0, || format!("dimension {}", d0.dim()));
    } else {
        r.push(
            format!("[div0, div0] at D={cutoff} contains the div0 basis at D={}", cutoff - 1),
            missing_witness(&d0, &enumerate_basis(&BasisSpec::div0(n, cutoff - 1))),
        );
    }
}

fn compare_spans(r: &mut Report, check: &str, got: &SpanSpace, want: &SpanSpace) {
    let witness = || {
        let extra = got.rows().into_iter().find(|d| want.contains(d).is_none());
        let lack = want.rows().into_iter().find(|d| got.contains(d).is_none());
        match (extra, lack) {
            (Some(e), _) => format!("unexpected element {e} (dims {} vs {})", got.dim(), want.dim()),
            (None, Some(l)) => format!("missing element {l} (dims {} vs {})", got.dim(), want.dim()),
            (None, None) => format!("dims {} vs {}", got.dim(), want.dim()),
        }
    };
    r.pass_if(check, got.same_span(want), witness);
}

fn cartan(r: &mut Report, n: usize, cutoff: u32) {
    let div0 = BasisSpec::div0(n, cutoff);
    let divc = BasisSpec::divc(n, cutoff);
    let c = centralizer(&partials(n), &div0).expect("shared n");
    compare_spans(r, "centralizer of the partials in div0 is their span", &c, &span_of(n, &partials(n)));

    let cn = cartan_truncation(n, cutoff);
    let c = centralizer(&euler_differences(n), &div0).expect("shared n");
    compare_spans(
        r,
        "centralizer of the trace-zero Euler span in div0 is the truncated Cartan subalgebra",
        &c,
        &cn,
    );

    let rows = cn.rows();
    let abelian = rows
        .iter()
        .all(|a| rows.iter().all(|b| a.bracket(b).expect("shared n").is_zero()));
    r.pass_if("truncated Cartan subalgebra is abelian", abelian, || "nonzero bracket".into());

    let nz = normalizer(&cn, &divc).expect("shared n");
    let want = span_sum(&cn, &span_of(n, &eulers(n)));
    compare_spans(r, "normalizer in divc of the Cartan subalgebra adds the Euler span", &nz, &want);

    let c = centralizer(&eulers(n), &divc).expect("shared n");
    compare_spans(r, "Euler span is self-centralizing in divc", &c, &span_of(n, &eulers(n)));
}

/// Product of triangular degrees allowed in one random word.
const DEGREE_BUDGET: u32 = 4;
const MAX_WORD_LEN: usize = 4;
const MAX_ELEMENTARY_DEGREE: u32 = 3;

#[derive(Default)]
struct Aggregate {
    failure: Option<String>,
}

impl Aggregate {
    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        if !ok && self.failure.is_none() {
            self.failure = Some(witness());
        }
    }
}

fn equivariance(r: &mut Report, n: usize, cutoff: u32, opts: &VerifyOptions) {
    let mut rng = seeded(opts.seed);
    let divc_basis = enumerate_basis(&BasisSpec::divc(n, cutoff));
    let names = [
        "div(s(d)) = s(div d)",
        "divergence class and constant preserved",
        "substitution and Jacobian conjugation agree",
        "J(st) = J(s) s(J(t))",
        "Jacobian determinant is a nonzero constant",
        "transformed partials are dual to the new coordinates",
        "transformed partials have zero divergence",
        "div(s(H_i) - H_i) = 0",
        "forward and inverse substitutions are mutually inverse",
    ];
    let mut agg: Vec<Aggregate> = names.iter().map(|_| Aggregate::default()).collect();
    for trial in 0..opts.trials {
        let s = random_tame(&mut rng, n, MAX_WORD_LEN, MAX_ELEMENTARY_DEGREE, DEGREE_BUDGET);
        let t = random_tame(&mut rng, n, MAX_WORD_LEN, MAX_ELEMENTARY_DEGREE, DEGREE_BUDGET);
        let d = random_derivation(&mut rng, n, cutoff, 2);
        let dc = random_combination(&mut rng, &divc_basis, 3);
        let tag = |w: String| format!("trial {trial}: {w}");

        for e in [&d, &dc] {
            let ok = check_div_equivariance(&s, e).expect("shared n");
            agg[0].record(ok, || tag(format!("d = {e}")));
            let before = e.classify();
            let after = conjugate(&s, e).expect("shared n").classify();
            let same = match (&before, &after) {
                (DivClass::Zero, DivClass::Zero) => true,
                (DivClass::Constant(a), DivClass::Constant(b)) => a == b,
                (DivClass::NonConstant(_), DivClass::NonConstant(_)) => true,
                _ => false,
            };
            agg[1].record(same, || tag(format!("d = {e}: {before} became {after}")));
        }

        let a = conjugate(&s, &d).expect("shared n");
        let b = conjugate_via_jacobian(&s, &d);
        agg[2].record(b.as_ref() == Ok(&a), || tag(format!("d = {d}")));

        let st = s.product(&t).expect("shared n");
        let lhs = jacobian(&st);
        let rhs = jacobian(&s).mul(&jacobian(&t).map(|p| s.apply(p).expect("shared n")));
        agg[3].record(lhs == rhs, || tag("chain rule mismatch".into()));

        let det = jacobian_det(&s);
        agg[4].record(det.is_constant() && !det.is_zero(), || tag(format!("det = {det}")));

        match transformed_partials(&s) {
            Ok(ps) => {
                let dual = ps.iter().enumerate().all(|(i, p)| {
                    s.forward_images().iter().enumerate().all(|(j, xj)| {
                        let v = p.apply(xj).expect("shared n");
                        if i == j {
                            v == Polynomial::one(n)
                        } else {
                            v.is_zero()
                        }
                    })
                });
                agg[5].record(dual, || tag("pairing is not the identity".into()));
                let free = ps.iter().all(|p| p.divergence().is_zero());
                agg[6].record(free, || tag("nonzero divergence".into()));
            }
            Err(e) => {
                agg[5].record(false, || tag(e.to_string()));
                agg[6].record(false, || tag(e.to_string()));
            }
        }

        let eul = eulers(n).into_iter().all(|h| {
            let c = conjugate(&s, &h).expect("shared n");
            (&c - &h).divergence().is_zero()
        });
        agg[7].record(eul, || tag("nonzero".into()));

        agg[8].record(s.is_consistent() && t.is_consistent(), || tag("inverse mismatch".into()));
    }
    for (name, a) in names.iter().zip(agg) {
        r.push(format!("{name} ({} trials)", opts.trials), a.failure);
    }
}

fn module_simple(r: &mut Report, n: usize, cutoff: u32, opts: &VerifyOptions) {
    let basis = enumerate_basis(&BasisSpec::div0(n, cutoff));
    let full = Monomial::all_up_to_degree(n, cutoff).len() - 1;
    if n == 1 {
        let o = module_orbit(&basis, &Polynomial::var(1, 0), cutoff).expect("valid seed");
        r.pass_if(
            format!("n = 1: orbit of x1 is a proper submodule (dim {} < {full})", o.dim()),
            o.dim() < full,
            || format!("orbit has dimension {}", o.dim()),
        );
        return;
    }
    let mut seeds: Vec<(String, Polynomial)> = Monomial::all_up_to_degree(n, cutoff.min(2))
        .into_iter()
        .filter(|m| m.degree() > 0)
        .map(|m| {
            let p = Polynomial::monomial(n, m, Rational::from_integer(1.into()));
            (format!("{p}"), p)
        })
        .collect();
    let mut rng = seeded(opts.seed);
    let mut k = 0;
    while k < 5 {
        let deg = rng.gen_range(1..=cutoff.max(1));
        let p = random_poly(&mut rng, n, deg, 3);
        if p.is_constant() {
            continue;
        }
        k += 1;
        seeds.push((format!("random seed {k}"), p));
    }
    for (label, p) in seeds {
        let o = module_orbit(&basis, &p, cutoff).expect("valid seed");
        r.pass_if(
            format!("orbit of {label} reaches every monomial of degree 1..={cutoff}"),
            o.dim() == full,
            || format!("orbit of {p} has dimension {} < {full}", o.dim()),
        );
    }
}

fn identities(r: &mut Report, n: usize, cutoff: u32) {
    for m in 1..=n {
        for o in check_all(m, cutoff) {
            r.push(format!("{} (n = {m}, {} cases)", o.name, o.cases), o.failure);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tags_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.tag().parse::<Theorem>().unwrap(), t);
        }
        assert!(matches!("nope".parse::<Theorem>(), Err(Error::UnknownName(_))));
    }

    #[test]
    fn small_suites_pass() {
        let opts = VerifyOptions {
            seed: 3,
            trials: 5,
            samples: 3,
        };
        for t in Theorem::ALL {
            let r = verify_theorem(t, 2, 3, &opts).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn json_shape() {
        let r = verify_theorem(Theorem::BasisLemma, 1, 1, &VerifyOptions::default()).unwrap();
        let v = r.to_json();
        let first = &v.as_array().unwrap()[0];
        assert_eq!(first["status"], "pass");
        assert!(first.get("witness").is_none());
    }

    #[test]
    fn requires_two_variables() {
        assert!(verify_theorem(Theorem::GenDiv0, 1, 3, &VerifyOptions::default()).is_err());
    }
}
