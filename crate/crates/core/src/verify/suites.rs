//! The end-to-end checks, one function per family. Each returns flat
//! [`CheckRecord`]s so that callers can print or serialize them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{binom_mod_p, d_coeff, FieldConfig, RatT};
use crate::error::Result;
use crate::hyperd::{depth_drop, kernel_on_modular, transform_depth_poly, DerivationEngine, Generator, Strategy};
use crate::qmring::{associated_polynomial, depth_coefficient_transform, grading, modular_basis, qm_basis, Grading, Mono, QmPoly};
use crate::tseries::{expand_e, expand_g, expand_h, hyper_derive, AlphaTable, Evaluator, TSeries};

use super::golden::{closed_forms, prime_field_systems};
use super::ideals::{check_hyperstable, member, IdealId};
use super::props::{
    h_power_quotient, munu_congruence, random_isobaric, random_rat, rankin_stability_probe,
    weight_divisibility_check,
};

/// Fields of the main suites.
pub const MAIN_FIELDS: [u32; 5] = [4, 5, 7, 8, 9];
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckRecord {
    fn new(check: &str, params: String, pass: bool, witness: Option<String>) -> Self {
        CheckRecord { check: check.to_string(), params, pass, witness }
    }

    fn from_result(check: &str, params: String, r: Result<Option<String>>) -> Self {
        match r {
            Ok(None) => Self::new(check, params, true, None),
            Ok(Some(w)) => Self::new(check, params, false, Some(w)),
            Err(e) => Self::new(check, params, false, Some(format!("error: {e}"))),
        }
    }

    /// `[PASS] check (params)` or `[FAIL] … : witness`.
    pub fn line(&self) -> String {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        match &self.witness {
            Some(w) if !self.pass => format!("[{tag}] {} ({}): {w}", self.check, self.params),
            _ => format!("[{tag}] {} ({})", self.check, self.params),
        }
    }
}

fn field(q: u32) -> FieldConfig {
    FieldConfig::for_q(q).expect("suite fields are prime powers")
}

fn seed_for(seed: u64, q: u32, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ ((q as u64) << 32) ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn p_powers_up_to(p: u64, max: u64) -> Vec<u64> {
    std::iter::successors(Some(1u64), |x| Some(x * p)).take_while(|x| *x <= max).collect()
}

// ---------------------------------------------------------------------------
// Closed forms

/// Engine values against the transcribed closed forms, for `n < q`,
/// `q <= p^i <= q^2`, and the two `q = p` systems.
pub fn golden_tables(q: u32) -> Vec<CheckRecord> {
    let f = field(q);
    let mut engine = DerivationEngine::new(f);
    let mut entries = closed_forms(f);
    entries.extend(prime_field_systems(f).unwrap_or_default());
    entries
        .iter()
        .map(|e| {
            let params = format!("q={q} {} D_{} {}", e.label, e.n, e.generator);
            let r = (|| {
                let got = engine.d_generator(e.generator, e.n)?;
                let want = e.value(f)?;
                Ok((got != want).then(|| format!("engine gives {got}, expected {want}")))
            })();
            CheckRecord::from_result("closed forms", params, r)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Series

/// The orders `{1..q} ∪ {p^i <= q^2} ∪ {p^i - 1} ∪ {p^i - q}`.
pub fn cross_validation_orders(f: FieldConfig) -> Vec<u64> {
    let (p, q) = (f.p() as u64, f.q() as u64);
    let pows = p_powers_up_to(p, q * q);
    let mut ns: Vec<u64> = (1..=q).collect();
    ns.extend(&pows);
    ns.extend(pows.iter().map(|x| x - 1));
    ns.extend(pows.iter().filter(|x| **x >= q).map(|x| x - q));
    ns.sort_unstable();
    ns.dedup();
    ns
}

pub fn default_order(q: u32) -> usize {
    (q * q + q + 2) as usize
}

/// `evaluate(D_n f) = D_n(evaluate f)` on `t`-expansions of order `order`.
pub fn series_cross_validation(q: u32, order: usize) -> Vec<CheckRecord> {
    let f = field(q);
    let mut engine = DerivationEngine::new(f);
    let mut ev = Evaluator::new(f, order);
    let mut alpha = AlphaTable::new(f);
    let mut out = Vec::new();
    for gen in Generator::ALL {
        let series = ev.generator(gen).clone();
        for n in cross_validation_orders(f) {
            let params = format!("q={q} N={order} D_{n} {gen}");
            let r = engine.d_generator(gen, n).map(|d| {
                let lhs = ev.eval(&d);
                let rhs = hyper_derive(&series, n, &mut alpha);
                (lhs != rhs).then(|| format!("from the ring: {lhs}; on the series: {rhs}"))
            });
            out.push(CheckRecord::from_result("series cross-validation", params, r));
        }
    }
    out
}

/// Expected leading behaviour of a series.
enum Leading {
    /// The first nonzero terms, in order.
    Terms(Vec<(usize, RatT)>),
    /// All coefficients below the bound vanish.
    Vanishes(usize),
}

fn leading_mismatch(s: &TSeries, want: &Leading) -> Option<String> {
    match want {
        Leading::Terms(terms) => {
            let got: Vec<(usize, RatT)> = s.terms().take(terms.len()).map(|(n, c)| (n, c.clone())).collect();
            let fmt = |v: &[(usize, RatT)]| v.iter().map(|(n, c)| format!("({c}) t^{n}")).collect::<Vec<_>>().join(" + ");
            (got != *terms).then(|| format!("leading terms {}, expected {}", fmt(&got), fmt(terms)))
        }
        Leading::Vanishes(b) => s
            .nu_infinity()
            .filter(|v| v < b)
            .map(|v| format!("nonzero coefficient ({}) at t^{v}, expected O(t^{b})", s.coeff(v))),
    }
}

/// The leading terms of `E`, `g`, `h` and of their derivatives at
/// `q`, `p^i` (`q < p^i < q^2`), `p^j - q` (`q < p^j <= q^2`) and `q^2`.
pub fn expansion_leading_terms(q: u32) -> Vec<CheckRecord> {
    let f = field(q);
    let (p, q64) = (f.p() as u64, q as u64);
    let qs = q as usize;
    let d1 = RatT::from(d_coeff(1, f));
    let d2 = RatT::from(d_coeff(2, f));
    let d1p = |k: i64| d1.pow(k).expect("d_1 is nonzero");
    let one = RatT::one(f);
    let neg = |x: &RatT| -x;
    let inv = |x: &RatT| x.inv().expect("nonzero");

    let ord_g = qs * qs * qs - 2 * qs * qs + 2 * qs;
    let ord_e = qs * qs - 2 * qs + 3;
    let order = default_order(q).max(ord_e);
    let e_big = expand_e(f, ord_e);
    let h_big = expand_h(f, ord_e);
    let g_big = expand_g(f, ord_g);
    let e = expand_e(f, order);
    let g = expand_g(f, order);
    let h = expand_h(f, order);
    let mut alpha = AlphaTable::new(f);

    let mut out = Vec::new();
    let mut push = |label: &str, params: String, s: &TSeries, want: Leading| {
        let w = leading_mismatch(s, &want);
        out.push(CheckRecord::new("expansion leading terms", format!("q={q} {label} {params}"), w.is_none(), w));
    };

    let top = qs * qs - 2 * qs + 2;
    push("(i)", "E".into(), &e_big, Leading::Terms(vec![(1, one.clone()), (top, one.clone())]));
    push(
        "(ii)",
        "g".into(),
        &g_big,
        Leading::Terms(vec![(0, one.clone()), (qs - 1, neg(&d1)), (ord_g - 1, neg(&d1))]),
    );
    push("(iii)", "h".into(), &h_big, Leading::Terms(vec![(1, neg(&one)), (top, neg(&one))]));

    let dq = |s: &TSeries, n: u64, alpha: &mut AlphaTable| hyper_derive(s, n, alpha);
    let de = dq(&e, q64, &mut alpha);
    push("(iv)", format!("D_{q} E"), &de, Leading::Terms(vec![(2, inv(&d1)), (qs + 1, one.clone())]));
    let dg = dq(&g, q64, &mut alpha);
    push("(v)", format!("D_{q} g"), &dg, Leading::Terms(vec![(qs, one.clone())]));
    let dh = dq(&h, q64, &mut alpha);
    push("(vi)", format!("D_{q} h"), &dh, Leading::Terms(vec![(2, neg(&inv(&d1))), (qs + 1, neg(&one))]));

    for pi in p_powers_up_to(p, q64 * q64).into_iter().filter(|x| *x > q64 && *x < q64 * q64) {
        let k = pi / q64;
        let ku = k as usize;
        let c = inv(&d1p(k as i64 + 1));
        let s = dq(&e, pi, &mut alpha);
        push("(vii)", format!("D_{pi} E"), &s, Leading::Terms(vec![(ku + 1, c.clone())]));
        let s = dq(&g, pi, &mut alpha);
        push("(viii)", format!("D_{pi} g"), &s, Leading::Vanishes(ku + 1));
        let s = dq(&h, pi, &mut alpha);
        push("(ix)", format!("D_{pi} h"), &s, Leading::Terms(vec![(ku + 1, neg(&c))]));
    }
    for pj in p_powers_up_to(p, q64 * q64).into_iter().filter(|x| *x > q64) {
        let k = pj / q64;
        let s = dq(&h, pj - q64, &mut alpha);
        let c = neg(&inv(&d1p(k as i64 - 1)));
        push("(x)", format!("D_{} h", pj - q64), &s, Leading::Terms(vec![(k as usize, c)]));
    }
    let qq = q64 * q64;
    let s = dq(&e, qq, &mut alpha);
    push("(xi)", format!("D_{qq} E"), &s, Leading::Terms(vec![(2, inv(&d2)), (qs + 1, inv(&d1p(q as i64)))]));
    let s = dq(&g, qq, &mut alpha);
    push(
        "(xii)",
        format!("D_{qq} g"),
        &s,
        Leading::Terms(vec![(qs, &d1 * &inv(&d2)), (2 * qs - 1, neg(&inv(&d1p(q as i64 - 1))))]),
    );
    let s = dq(&h, qq, &mut alpha);
    push(
        "(xiii)",
        format!("D_{qq} h"),
        &s,
        Leading::Terms(vec![(2, neg(&inv(&d2))), (qs + 1, neg(&inv(&d1p(q as i64))))]),
    );
    out
}

// ---------------------------------------------------------------------------
// Randomized identities

/// The default engine, and one that expands monomials by the Leibniz rule only.
struct Engines {
    main: DerivationEngine,
    leibniz: DerivationEngine,
}

/// Runs `case` for `cases` seeds spread over `fields`, returning one record
/// with the first failing witness.
fn property<F>(name: &str, fields: &[u32], cases: usize, seed: u64, salt: u64, case: F) -> CheckRecord
where
    F: Fn(&mut Engines, &mut ChaCha8Rng) -> Result<Option<String>> + Sync,
{
    let per_field: Vec<(u32, usize)> = fields
        .iter()
        .enumerate()
        .map(|(i, q)| (*q, cases / fields.len() + usize::from(i < cases % fields.len())))
        .collect();
    let failures: Vec<String> = per_field
        .par_iter()
        .filter_map(|&(q, count)| {
            let f = field(q);
            let mut engines = Engines {
                main: DerivationEngine::new(f),
                leibniz: DerivationEngine::with_strategy(f, Strategy::Leibniz),
            };
            let mut rng = seed_for(seed, q, salt);
            (0..count).find_map(|i| match case(&mut engines, &mut rng) {
                Ok(None) => None,
                Ok(Some(w)) => Some(format!("q={q} case {i}: {w}")),
                Err(e) => Some(format!("q={q} case {i}: error: {e}")),
            })
        })
        .collect();
    let params = format!("{cases} cases over q in {fields:?}, seed {seed}");
    CheckRecord::new(name, params, failures.is_empty(), failures.into_iter().next())
}

fn random_grading(rng: &mut ChaCha8Rng, f: FieldConfig, max_w: u64, max_l: u32) -> (u64, u32, u32) {
    (rng.gen_range(0..=max_w), rng.gen_range(0..f.q() - 1), rng.gen_range(0..=max_l))
}

/// A nonzero random form and its grading.
fn random_form(rng: &mut ChaCha8Rng, f: FieldConfig, max_w: u64, max_l: u32) -> (QmPoly, (u64, u32, u32)) {
    loop {
        let g = random_grading(rng, f, max_w, max_l);
        let x = random_isobaric(rng, f, g.0, g.1, g.2);
        if !x.is_zero() {
            return (x, g);
        }
    }
}

fn small_weight(f: FieldConfig) -> u64 {
    2 * (f.q() as u64 + 1)
}

/// The randomized identities on `D_n`, and the binomial sweep.
pub fn property_suites(fields: &[u32], cases: usize, seed: u64) -> Vec<CheckRecord> {
    let mut out = Vec::new();

    out.push(property("iterativity D_i D_j = C(i+j, i) D_{i+j}", fields, cases, seed, 1, |engines, rng| {
        let en = &mut engines.main;
        let f = en.field();
        let (x, _) = random_form(rng, f, small_weight(f), 2);
        let top = en.limit().min(40);
        let i = rng.gen_range(0..=top);
        let j = rng.gen_range(0..=top - i);
        let inner = en.derive(&x, j)?;
        let lhs = en.derive(&inner, i)?;
        let b = binom_mod_p((i + j) as i64, i, f.p());
        let rhs = en.derive(&x, i + j)?.scale_int(b as i64);
        Ok((lhs != rhs).then(|| format!("f = {x}, i = {i}, j = {j}")))
    }));

    out.push(property("Leibniz rule", fields, cases, seed, 2, |engines, rng| {
        let en = &mut engines.main;
        let f = en.field();
        let (x, _) = random_form(rng, f, small_weight(f), 1);
        let (y, _) = random_form(rng, f, small_weight(f), 1);
        let n = rng.gen_range(0..=en.limit().min(24));
        let lhs = en.derive(&(&x * &y), n)?;
        let mut rhs = QmPoly::zero(f);
        for r in 0..=n {
            rhs = &rhs + &(&en.derive(&x, r)? * &en.derive(&y, n - r)?);
        }
        Ok((lhs != rhs).then(|| format!("f = {x}, g = {y}, n = {n}")))
    }));

    // Both sides through an engine that expands monomials by the Leibniz rule
    // only, so the identity is not used to compute either side.
    out.push(property("Frobenius D_{n p^k}(f^{p^k}) = (D_n f)^{p^k}", fields, cases, seed, 3, |engines, rng| {
        let plain = &mut engines.leibniz;
        let f = plain.field();
        let p = f.p() as u64;
        let limit = plain.limit();
        let k = if p <= 3 && rng.gen_bool(0.3) { 2 } else { 1 };
        let pk = p.pow(k);
        let (x, _) = random_form(rng, f, f.q() as u64 + 1, 1);
        let big = x.pow(pk);
        let n = rng.gen_range(0..=(limit / pk).min(f.q() as u64));
        let lhs = plain.derive(&big, n * pk)?;
        let rhs = plain.derive(&x, n)?.pow(pk);
        if lhs != rhs {
            return Ok(Some(format!("f = {x}, n = {n}, p^k = {pk}")));
        }
        let m = rng.gen_range(1..=limit.min(n * pk + pk));
        let off = plain.derive(&big, m)?;
        Ok((m % pk != 0 && !off.is_zero()).then(|| format!("f = {x}: D_{m}(f^{pk}) = {off}, expected 0")))
    }));

    out.push(property("grading contract of D_n", fields, cases, seed, 4, |engines, rng| {
        let en = &mut engines.main;
        let f = en.field();
        let q1 = f.q() - 1;
        let (x, (w, m, l)) = random_form(rng, f, 3 * (f.q() as u64 + 1), 3);
        let n = rng.gen_range(0..=en.limit().min(32));
        let d = en.derive(&x, n)?;
        let ok = match grading(&d)? {
            Grading::Zero => true,
            Grading::Isobaric(s) => {
                s.weight == w + 2 * n && s.typ == (m + (n % q1 as u64) as u32) % q1 && s.depth <= l + n as u32
            }
        };
        Ok((!ok).then(|| format!("f = {x} of grading ({w}, {m}, <= {l}), n = {n}: D_n f = {d}")))
    }));

    out.push(property("associated polynomial of D_n f, two routes", fields, cases, seed, 5, |engines, rng| {
        let en = &mut engines.main;
        let f = en.field();
        let (x, (w, _, _)) = random_form(rng, f, 3 * (f.q() as u64 + 1), 3);
        let n = rng.gen_range(0..=en.limit().min(24));
        let via_transform = transform_depth_poly(en, &associated_polynomial(&x), w, n)?;
        let direct = associated_polynomial(&en.derive(&x, n)?);
        Ok((via_transform != direct).then(|| format!("f = {x}, n = {n}: {via_transform} vs {direct}")))
    }));

    out.push(property("depth drop criterion on generic forms", fields, cases, seed, 6, |engines, rng| {
        let en = &mut engines.main;
        let f = en.field();
        let p = f.p();
        // Look for a grading whose top depth slot is nonempty.
        let (w, m, l, basis) = loop {
            let (w, m, l) = random_grading(rng, f, 4 * (f.q() as u64 + 1), 4);
            let basis = qm_basis(w, m, l, f);
            if basis.iter().any(|b| b.e == l) {
                break (w, m, l, basis);
            }
        };
        let x = QmPoly::from_terms(f, basis.into_iter().map(|b| (b, random_rat(rng, f, true))));
        let n = rng.gen_range(1..=en.limit().min(40));
        let d = en.derive(&x, n)?;
        let dropped = d.depth().is_none_or(|dd| dd < l + n as u32);
        let predicted = depth_drop(w, l, n, p);
        Ok((dropped != predicted).then(|| format!("grading ({w}, {m}, {l}), n = {n}: dropped {dropped}, predicted {predicted}")))
    }));

    out.push(property("coefficient-form transform", fields, cases, seed, 7, |engines, rng| {
        let en = &mut engines.main;
        let f = en.field();
        let (x, _) = random_form(rng, f, 4 * (f.q() as u64 + 1), 4);
        let poly = associated_polynomial(&x);
        let Some(top) = poly.degree() else { return Ok(None) };
        let i = rng.gen_range(0..=top);
        let shifted = depth_coefficient_transform(&poly, i)?;
        let direct = associated_polynomial(&poly.coeff(i));
        Ok((shifted != direct).then(|| format!("f = {x}, i = {i}")))
    }));

    out.push(binomial_sweep());
    out
}

/// Exact integer `C(n, k)` for any integer `n`.
fn exact_binom(n: i64, k: u64) -> i128 {
    let mut num: i128 = 1;
    for j in 0..k as i128 {
        num = num * (n as i128 - j) / (j + 1);
    }
    num
}

/// `Σ_i (-1)^i C(M, N-i) C(W+i-1, i) ≡ C(M-W, N) (mod p)` for
/// `0 <= N, W, M <= 20`, the left side in exact integers.
pub fn binomial_sweep() -> CheckRecord {
    let mut witness = None;
    'outer: for p in [2u32, 3, 5] {
        for n in 0..=20u64 {
            for w in 0..=20i64 {
                for m in 0..=20i64 {
                    let lhs: i128 = (0..=n)
                        .map(|i| {
                            let s = if i % 2 == 0 { 1 } else { -1 };
                            s * exact_binom(m, n - i) * exact_binom(w + i as i64 - 1, i)
                        })
                        .sum();
                    let rhs = binom_mod_p(m - w, n, p) as i128;
                    if lhs.rem_euclid(p as i128) != rhs {
                        witness = Some(format!("p={p} N={n} W={w} M={m}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    CheckRecord::new("binomial identity sweep", "0 <= N, W, M <= 20, p in {2, 3, 5}".into(), witness.is_none(), witness)
}

// ---------------------------------------------------------------------------
// Ideals

/// `(id, n_max)` stability reports for the classified ideals, the principal
/// controls, the inclusion diagram and the Rankin probe.
pub fn ideal_classification(q: u32, n_max: u64, seed: u64) -> Vec<CheckRecord> {
    let f = field(q);
    let mut engine = DerivationEngine::new(f);
    let n_max = n_max.min(engine.limit());
    let mut rng = seed_for(seed, q, 11);
    let ds: Vec<RatT> = (0..5).map(|_| random_rat(&mut rng, f, true)).collect();
    let cs: Vec<RatT> = (0..3).map(|_| random_rat(&mut rng, f, false)).collect();

    let mut stable = vec![IdealId::PrincipalH, IdealId::P0, IdealId::Pinf];
    stable.extend(ds.iter().cloned().map(IdealId::Pd));
    stable.extend(cs.iter().cloned().map(IdealId::MaxC));

    let mut out = Vec::new();
    for id in &stable {
        let params = format!("q={q} {id} n_max={n_max}");
        let r = check_hyperstable(&mut engine, id, n_max).map(|rep| {
            rep.first_failure().map(|(n, w)| format!("D_{n} of a generator leaves the ideal, residue {w}"))
        });
        out.push(CheckRecord::from_result("hyperdifferential ideal", params, r));
    }

    for gen in [Generator::G, Generator::E] {
        let id = IdealId::Principal(gen);
        let params = format!("q={q} {id} first failure at n=1");
        let r = check_hyperstable(&mut engine, &id, n_max).map(|rep| match rep.first_failure() {
            Some((1, _)) => None,
            Some((n, w)) => Some(format!("first failure at n={n}, residue {w}")),
            None => Some(format!("stable up to n={n_max}")),
        });
        out.push(CheckRecord::from_result("negative control", params, r));
    }

    let maximal = IdealId::MaxC(RatT::zero(f));
    let mut inclusions: Vec<(IdealId, IdealId)> = Vec::new();
    for big in [IdealId::P0, IdealId::Pinf].into_iter().chain(ds.iter().cloned().map(IdealId::Pd)) {
        inclusions.push((IdealId::PrincipalH, big.clone()));
        inclusions.push((big, maximal.clone()));
    }
    for c in &cs {
        inclusions.push((IdealId::P0, IdealId::MaxC(c.clone())));
    }
    for (small, big) in inclusions {
        let bad: Vec<String> =
            small.generators(f).into_iter().filter(|g| !member(&big, g).member).map(|g| g.to_string()).collect();
        let params = format!("q={q} {small} ⊂ {big}");
        let w = (!bad.is_empty()).then(|| format!("generators outside: {}", bad.join(", ")));
        out.push(CheckRecord::new("inclusion diagram", params, w.is_none(), w));
    }

    let (e, g, h) = (QmPoly::e(f), QmPoly::g(f), QmPoly::h(f));
    let multipliers = [QmPoly::one(f), e.clone(), g.clone(), h.clone(), e.pow(2)];
    let ms = [e.clone(), g.clone(), h.clone(), &(&e * &g) + &h];
    for id in &stable {
        let samples: Vec<QmPoly> = id
            .generators(f)
            .into_iter()
            .filter(|x| matches!(grading(x), Ok(Grading::Isobaric(_))))
            .flat_map(|x| multipliers.iter().map(move |u| u * &x).collect::<Vec<_>>())
            .collect();
        for m in &ms {
            let params = format!("q={q} {id} M={m}");
            let r = rankin_stability_probe(m, id, &samples).map(|ok| (!ok).then(|| "bracket leaves the ideal".to_string()));
            out.push(CheckRecord::from_result("Rankin bracket probe", params, r));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Congruences, kernels, powers of h

/// `D_n(E^μ g^ν) mod h` for all `μ, ν <= max_exp`, `n <= n_max`.
pub fn munu_suite(q: u32, max_exp: u32, n_max: u64) -> Vec<CheckRecord> {
    let f = field(q);
    let mut engine = DerivationEngine::new(f);
    let n_max = n_max.min(engine.limit());
    let mut bad = Vec::new();
    let mut err = None;
    for mu in 0..=max_exp {
        for nu in 0..=max_exp {
            for n in 0..=n_max {
                match munu_congruence(&mut engine, mu, nu, n) {
                    Ok(true) => {}
                    Ok(false) => bad.push(format!("(mu, nu, n) = ({mu}, {nu}, {n})")),
                    Err(e) => err = Some(e),
                }
            }
        }
    }
    let params = format!("q={q} mu, nu <= {max_exp}, n <= {n_max}");
    let r = match err {
        Some(e) => Err(e),
        None => Ok((!bad.is_empty()).then(|| bad.into_iter().take(5).collect::<Vec<_>>().join("; "))),
    };
    vec![CheckRecord::from_result("E^mu g^nu congruence mod h", params, r)]
}

/// Kernels of `D_1, …, D_{p^k}` on modular forms of weight up to `12(q-1)`.
pub fn kernel_suite(q: u32, ks: &[u32], seed: u64) -> Vec<CheckRecord> {
    let f = field(q);
    let p = f.p() as u64;
    let mut engine = DerivationEngine::new(f);
    let max_w = 12 * (q as u64 - 1);
    let order = default_order(q);
    let mut ev = Evaluator::new(f, order);
    let mut out = Vec::new();
    for &k in ks {
        let pk1 = p.pow(k + 1);
        let mut bad: Vec<String> = Vec::new();
        let mut err = None;
        let mut nonempty = 0;
        for w in 0..=max_w {
            for m in 0..q - 1 {
                let ker = match kernel_on_modular(&mut engine, w, m, k) {
                    Ok(v) => v,
                    Err(e) => {
                        err = Some(e);
                        continue;
                    }
                };
                let expected_dim = modular_basis(w, m, f)
                    .into_iter()
                    .filter(|b| b.root(pk1 as u32).is_some())
                    .count();
                if ker.len() != expected_dim {
                    bad.push(format!("(w, m) = ({w}, {m}): kernel dimension {} vs {expected_dim}", ker.len()));
                }
                if !ker.is_empty() {
                    nonempty += 1;
                    if w % pk1 != 0 {
                        bad.push(format!("(w, m) = ({w}, {m}): nonzero kernel but p^{} does not divide w", k + 1));
                    }
                }
                for x in &ker {
                    if x.monomials().any(|b| b.root(pk1 as u32).is_none()) {
                        bad.push(format!("(w, m) = ({w}, {m}): {x} is not a p^{}-th power", k + 1));
                    }
                    let s = ev.eval(x);
                    let stray = s.terms().map(|(n, _)| n).find(|n| !(*n as u64).is_multiple_of(pk1));
                    if let Some(n) = stray {
                        bad.push(format!("(w, m) = ({w}, {m}): {x} has t^{n} in its expansion"));
                    }
                }
            }
        }
        let params = format!("q={q} k={k} w <= {max_w}, {nonempty} nonzero kernels, N={order}");
        let r = match err {
            Some(e) => Err(e),
            None => Ok((!bad.is_empty()).then(|| bad.into_iter().take(5).collect::<Vec<_>>().join("; "))),
        };
        out.push(CheckRecord::from_result("kernels on modular forms", params, r));

        let mut rng = seed_for(seed, q, 20 + k as u64);
        let params = format!("q={q} k={k} 20 samples");
        let r = weight_divisibility_check(&mut engine, k, &mut rng, 20).map(|ok| (!ok).then(|| "sample failed".to_string()));
        out.push(CheckRecord::from_result("weight divisibility of p-power kernels", params, r));
    }
    out
}

/// `D_r(h^n) / h^n` is a polynomial for `|n| <= n_abs`, `r <= r_max`. For
/// negative `n` the quotient is also compared with the convolution power of
/// the `n = -1` quotients.
pub fn h_power_suite(q: u32, n_abs: i64, r_max: u64) -> Vec<CheckRecord> {
    let f = field(q);
    let mut engine = DerivationEngine::new(f);
    let r_max = r_max.min(engine.limit());
    let mut out = Vec::new();
    let inv: Result<Vec<QmPoly>> = (0..=r_max).map(|r| h_power_quotient(&mut engine, -1, r)).collect();
    for n in -n_abs..=n_abs {
        let params = format!("q={q} n={n} r <= {r_max}");
        let r = (|| -> Result<Option<String>> {
            let quotients: Vec<QmPoly> = (0..=r_max).map(|r| h_power_quotient(&mut engine, n, r)).collect::<Result<_>>()?;
            if n >= 0 {
                let hn = QmPoly::monomial(f, Mono::new(0, 0, n as u32));
                for (r, u) in quotients.iter().enumerate() {
                    if &hn * u != engine.derive(&hn, r as u64)? {
                        return Ok(Some(format!("r={r}: h^n times the quotient differs from D_r(h^n)")));
                    }
                }
                return Ok(None);
            }
            let inv = inv.as_ref().map_err(Clone::clone)?;
            let mut conv: Vec<QmPoly> = inv.clone();
            for _ in 1..(-n) {
                conv = (0..=r_max as usize)
                    .map(|r| (0..=r).fold(QmPoly::zero(f), |acc, s| &acc + &(&conv[s] * &inv[r - s])))
                    .collect();
            }
            Ok(quotients.iter().zip(&conv).position(|(a, b)| a != b).map(|r| format!("r={r}: recursion and convolution disagree")))
        })();
        out.push(CheckRecord::from_result("derivatives of powers of h", params, r));
    }
    out
}
