//! Replayable catalogue of reference computations with stable case ids.

use std::fmt::Display;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cones::{
    cone_chi_y, projective_cone_mc, projective_cone_mc0, projective_cone_pushforward,
    projective_cone_sheaf, segre_pullback_holds,
};
use crate::equivariant::{
    affine_to_projective_mc, equiv_linear_subspace, projective_to_affine_full,
    projective_to_affine_scalar, scalar_extension_coefficients, unreduced_from_h,
};
use crate::error::Result;
use crate::hilbert::{
    count_standard_monomials, hilbert_series_coefficients, kpoly_from_monomial_ideal,
    sheaf_class_from_kpoly, KPolynomial, MonomialIdeal,
};
use crate::projective::{
    chi_y_plane_curve_closed_form, chi_y_space_surface_closed_form, complete_intersection_class,
    cubic_catalogue, genus_report, integral, mc0_union_two_linear, mc_linear_subspace,
    mc_projective_space, mc_rational_normal_curve, mc_smooth_hypersurface,
    rational_normal_curve_class,
};
use crate::ring::{
    binomial, binomial_signed, Basis, Character, LaurentExpr, ScalarEmbedding, TorusAction,
    TruncatedClass, YPoly, YRational,
};

/// Seed for the randomized families; fixed so that runs are reproducible.
pub const SEED: u64 = 0x6b5f_636f_6e65;

pub const ROUNDTRIP_CASES: usize = 200;
pub const HILBERT_CASES: usize = 50;
pub const HILBERT_DEPTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyOutcome {
    pub id: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

struct Check {
    expected: String,
    computed: String,
    pass: bool,
}

fn same<T: PartialEq + Display>(expected: T, computed: T) -> Check {
    Check {
        pass: expected == computed,
        expected: expected.to_string(),
        computed: computed.to_string(),
    }
}

fn same_class(expected: &TruncatedClass, computed: &TruncatedClass) -> Check {
    Check {
        pass: expected == computed,
        expected: format!("{} (n={})", expected.render(Basis::H), expected.n()),
        computed: format!("{} (n={})", computed.render(Basis::H), computed.n()),
    }
}

fn holds(what: impl Into<String>, ok: bool) -> Check {
    let what = what.into();
    Check {
        computed: if ok { what.clone() } else { format!("not: {what}") },
        expected: what,
        pass: ok,
    }
}

type Runner = Box<dyn Fn() -> Result<Check> + Send + Sync>;

struct Case {
    id: String,
    run: Runner,
}

fn case(id: impl Into<String>, run: impl Fn() -> Result<Check> + Send + Sync + 'static) -> Case {
    Case {
        id: id.into(),
        run: Box::new(run),
    }
}

fn h(n: usize, cs: &[i64]) -> TruncatedClass {
    TruncatedClass::from_h_ints(n, cs)
}

fn y_poly(cs: &[i64]) -> YRational {
    YRational::from_poly(YPoly::from_i64s(cs))
}

/// Reference triples `([O_X], [X], mC_0)` of the singular plane cubics.
const CUBIC_FIXTURES: [(&str, [[i64; 3]; 3]); 6] = [
    ("nodal", [[0, 3, -3], [0, 3, -2], [0, 3, -3]]),
    ("cuspidal", [[0, 3, -3], [0, 3, -2], [0, 3, -2]]),
    ("conic_line", [[0, 3, -3], [0, 3, -1], [0, 3, -3]]),
    ("conic_tangent", [[0, 3, -3], [0, 3, -1], [0, 3, -2]]),
    ("three_lines", [[0, 3, -3], [0, 3, 0], [0, 3, -3]]),
    ("concurrent_lines", [[0, 3, -3], [0, 3, 0], [0, 3, -2]]),
];

fn table_cases(out: &mut Vec<Case>) {
    for (row, fixture) in CUBIC_FIXTURES {
        for (slot, name) in ["sheaf", "pushforward", "mc0"].into_iter().enumerate() {
            let expected = h(2, &fixture[slot]);
            out.push(case(format!("table1.{row}.{name}"), move || {
                let entry = crate::projective::cubic(row)?;
                let c = &entry.classes;
                let got = [&c.sheaf, &c.pushforward, &c.motivic0][slot];
                Ok(same_class(&expected, got))
            }));
        }
    }
}

/// `1 - y + ... + (-y)^n`.
fn alternating(n: usize) -> YRational {
    let cs: Vec<i64> = (0..=n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    y_poly(&cs)
}

fn projective_space_cases(out: &mut Vec<Case>) {
    for n in 0..=10 {
        out.push(case(format!("chi_y.pn.{n}"), move || {
            Ok(same(alternating(n), integral(&mc_projective_space(n))))
        }));
    }
    for n in 0..=8 {
        out.push(case(format!("mc.pn.{n}"), move || {
            let coeffs = (0..=n)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    let c = YPoly::monomial(binomial(n as i64 + 1, i as i64) * sign, i);
                    YRational::from_poly(&c * &YPoly::from_i64s(&[1, 1]).pow((n - i) as u32))
                })
                .collect();
            Ok(same_class(&TruncatedClass::from_h_coeffs(n, coeffs), &mc_projective_space(n)))
        }));
        out.push(case(format!("todd.pn.{n}"), move || {
            let g = genus_report(&mc_projective_space(n), n)?;
            Ok(same(BigRational::one(), g.todd))
        }));
    }
}

fn genus_cases(out: &mut Vec<Case>) {
    for n in 2..=5usize {
        for d in 1..=8u32 {
            out.push(case(format!("genus.hypersurface.n{n}.d{d}"), move || {
                let expected = BigRational::from_integer(binomial(d as i64 - 1, n as i64));
                let g = genus_report(&mc_smooth_hypersurface(d, n)?, n - 1)?;
                Ok(same(expected, g.arithmetic_genus))
            }));
        }
    }
    for d in 2..=8u32 {
        out.push(case(format!("rnc.d{d}"), move || {
            let n = d as usize;
            let mut cs = vec![0i64; n + 1];
            cs[n - 1] = d as i64;
            cs[n] = -(d as i64 - 1);
            let class = rational_normal_curve_class(d)?;
            let todd = crate::projective::integral(&class).as_constant();
            let mc_todd = genus_report(&mc_rational_normal_curve(d)?, 1)?.todd;
            Ok(Check {
                pass: class == h(n, &cs) && todd == Some(BigRational::one()) && mc_todd.is_one(),
                expected: format!("{}; td=1", h(n, &cs)),
                computed: format!(
                    "{}; td={}",
                    class,
                    todd.map_or("?".to_string(), |t| t.to_string())
                ),
            })
        }));
    }
}

/// The two `K`-polynomials of three points in `P^2`: collinear and general.
pub fn three_point_kpolys() -> Result<(KPolynomial, KPolynomial)> {
    Ok((
        KPolynomial::parse("3(1-t)^2 - (t+2)(1-t)^3", 2)?,
        KPolynomial::parse("3(1-t)^2 - 2(1-t)^3", 2)?,
    ))
}

fn prefix_of(v: &[BigInt]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn hilbert_example_cases(out: &mut Vec<Case>) {
    out.push(case("two_planes.kpoly", || {
        let ideal = MonomialIdeal::parse("x0*x2, x0*x3, x1*x2, x1*x3", 4)?;
        let got = kpoly_from_monomial_ideal(&ideal)?;
        Ok(same(KPolynomial::from_i64s(3, &[1, 0, -4, 4, -1]), got))
    }));
    out.push(case("two_planes.sheaf", || {
        let k = KPolynomial::from_i64s(3, &[1, 0, -4, 4, -1]);
        Ok(same_class(&h(3, &[0, 0, 2]), &sheaf_class_from_kpoly(&k)))
    }));
    out.push(case("two_planes.mc0", || {
        let k = KPolynomial::from_i64s(3, &[1, 0, -4, 4, -1]);
        Ok(same_class(&sheaf_class_from_kpoly(&k), &mc0_union_two_linear(2, 2, 3)?))
    }));
    out.push(case("three_points.series.general", || {
        let (_, general) = three_point_kpolys()?;
        let mut expected = vec![BigInt::one()];
        expected.extend(std::iter::repeat_n(BigInt::from(3), 8));
        Ok(same(prefix_of(&expected), prefix_of(&hilbert_series_coefficients(&general, 8))))
    }));
    out.push(case("three_points.series.collinear", || {
        let (collinear, _) = three_point_kpolys()?;
        let mut expected = vec![BigInt::one(), BigInt::from(2)];
        expected.extend(std::iter::repeat_n(BigInt::from(3), 7));
        Ok(same(prefix_of(&expected), prefix_of(&hilbert_series_coefficients(&collinear, 8))))
    }));
    out.push(case("three_points.sheaf", || {
        let (a, b) = three_point_kpolys()?;
        let (ca, cb) = (sheaf_class_from_kpoly(&a), sheaf_class_from_kpoly(&b));
        let mut c = same_class(&ca, &cb);
        c.pass &= ca == h(2, &[0, 0, 3]);
        Ok(c)
    }));
}

struct ConeTriple {
    motivic: TruncatedClass,
    sheaf: TruncatedClass,
    pushforward: TruncatedClass,
}

fn hypersurface_cone(d: u32) -> Result<ConeTriple> {
    let mc = mc_smooth_hypersurface(d, 2)?;
    let todd = genus_report(&mc, 1)?.todd;
    let motivic = projective_cone_mc0(&mc.at_y_zero()?, &todd);
    let k = KPolynomial::parse(&format!("1 - t^{d}"), 2)?;
    let sheaf = projective_cone_sheaf(&k).1;
    let pushforward = projective_cone_pushforward(&complete_intersection_class(&[d], 2)?);
    Ok(ConeTriple {
        motivic,
        sheaf,
        pushforward,
    })
}

fn pairwise_distinct<T: PartialEq>(v: &[T]) -> bool {
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| v[i] != v[j]))
}

fn cone_cases(out: &mut Vec<Case>) {
    out.push(case("cone.quartic.mc", || {
        Ok(same_class(&h(3, &[0, 4, -6, 3]), &hypersurface_cone(4)?.motivic))
    }));
    out.push(case("cone.quartic.sheaf", || {
        Ok(same_class(&h(3, &[0, 4, -6, 4]), &hypersurface_cone(4)?.sheaf))
    }));
    out.push(case("cone.quartic.pushforward", || {
        Ok(same_class(&h(3, &[0, 4, -6]), &hypersurface_cone(4)?.pushforward))
    }));
    out.push(case("cone.quartic.integrals", || {
        let c = hypersurface_cone(4)?;
        let ints = [integral(&c.motivic), integral(&c.sheaf), integral(&c.pushforward)];
        let expected = [1, 2, -2].map(YRational::from_int);
        let show = |v: &[YRational; 3]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        Ok(Check {
            pass: ints == expected && pairwise_distinct(&ints),
            expected: show(&expected),
            computed: show(&ints),
        })
    }));
    for d in 1..=8u32 {
        out.push(case(format!("cone.distinctness.d{d}"), move || {
            let c = hypersurface_cone(d)?;
            if d >= 4 {
                let classes = [&c.motivic, &c.sheaf, &c.pushforward];
                let ints = classes.map(integral);
                Ok(holds(
                    "classes and integrals pairwise distinct",
                    pairwise_distinct(&classes) && pairwise_distinct(&ints),
                ))
            } else {
                Ok(same_class(&c.sheaf, &c.motivic))
            }
        }));
    }
    for entry in cubic_catalogue() {
        let row = entry.name;
        out.push(case(format!("cone.recursion.{row}"), move || {
            let mc = crate::projective::cubic(row)?.mc;
            let cone = projective_cone_mc(&mc);
            let genus_ok = integral(&cone.cone_class) == cone_chi_y(&integral(&mc));
            let segre_ok = segre_pullback_holds(&mc)?;
            let todd = genus_report(&mc, 1)?.todd;
            let slice_ok = cone.cone_class.at_y_zero()? == projective_cone_mc0(&mc.at_y_zero()?, &todd);
            Ok(holds(
                "cone genus, Segre pullback and y=0 slice all agree",
                genus_ok && segre_ok && slice_ok,
            ))
        }));
    }
}

/// `(1 - (-y)^(k+1)) / (1+y)`.
fn chi_y_linear(k: usize) -> YRational {
    alternating(k)
}

fn one_minus_t_pow(rank: usize, e: usize) -> LaurentExpr {
    let f = &LaurentExpr::one(rank) - &LaurentExpr::t_power(rank, 1);
    (0..e).fold(LaurentExpr::one(rank), |acc, _| &acc * &f)
}

fn equivariant_cases(out: &mut Vec<Case>) {
    for n in 0..=5usize {
        for k in 0..=n {
            out.push(case(format!("pk_identity.n{n}.k{k}"), move || {
                let mc = mc_linear_subspace(k, n)?;
                let coeffs = scalar_extension_coefficients(&mc);
                let lhs = unreduced_from_h(0, &coeffs);
                let one_yt = &LaurentExpr::one(0) + &LaurentExpr::t_power(0, 1).scale(&YRational::y());
                let rhs = &(&one_minus_t_pow(0, n - k) * &one_yt.pow((k + 1) as i64)?)
                    - &one_minus_t_pow(0, n + 1);
                let scalar = projective_to_affine_scalar(&mc, &chi_y_linear(k))?;
                let mut c = same(&rhs, &lhs);
                c.pass &= scalar.terms() == &rhs;
                Ok(c)
            }));
        }
    }
    for n in 0..=4usize {
        for k in 0..=n {
            out.push(case(format!("linear_subspace.n{n}.k{k}"), move || {
                let action = TorusAction::diagonal(n);
                let lin = equiv_linear_subspace(k, &action)?;
                let image = projective_to_affine_full(&lin.mc_t, &chi_y_linear(k))?;
                let expected = lin.m.terms() - lin.r.terms();
                Ok(same(&expected, image.terms()))
            }));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..ROUNDTRIP_CASES {
        let (action, k) = random_scalar_action(&mut rng, 3, 4);
        out.push(case(format!("transfer.roundtrip.{i:03}"), move || {
            let lin = equiv_linear_subspace(k, &action)?;
            let affine = projective_to_affine_full(&lin.mc_t, &chi_y_linear(k))?;
            let back = affine_to_projective_mc(&affine, None)?;
            Ok(same(&lin.mc_t, &back))
        }));
    }
}

/// Random action of a torus of rank `1..=max_rank` on `C^(n+1)`, `n <= max_n`,
/// carrying a scalar embedding, together with a subspace dimension `k <= n`.
pub fn random_scalar_action(rng: &mut impl Rng, max_rank: usize, max_n: usize) -> (TorusAction, usize) {
    let rank = rng.gen_range(1..=max_rank);
    let n = rng.gen_range(0..=max_n);
    let k = rng.gen_range(0..=n);
    let q = [-2i64, -1, 1, 2, 3][rng.gen_range(0..5)];
    let mut weights = vec![1i64];
    weights.extend((1..rank).map(|_| rng.gen_range(-2..=2)));
    let characters = (0..=n)
        .map(|_| {
            let mut c: Vec<i64> = (0..rank).map(|_| rng.gen_range(-2..=2)).collect();
            c[0] = q - (1..rank).map(|j| weights[j] * c[j]).sum::<i64>();
            Character(c)
        })
        .collect();
    let action = TorusAction::new(rank, characters, Some(ScalarEmbedding { weights, q }))
        .expect("characters built to have scalar weight q");
    (action, k)
}

/// Random monomial ideal with at most `max_gens` generators in at most
/// `max_vars` variables, exponents at most 3.
pub fn random_monomial_ideal(rng: &mut impl Rng, max_gens: usize, max_vars: usize) -> MonomialIdeal {
    let vars = rng.gen_range(1..=max_vars);
    let gens = rng.gen_range(0..=max_gens);
    let generators = (0..gens)
        .map(|_| (0..vars).map(|_| rng.gen_range(0..=3)).collect())
        .collect();
    MonomialIdeal::new(vars, generators).expect("consistent variable count")
}

fn hilbert_cases(out: &mut Vec<Case>) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x1b);
    for i in 0..HILBERT_CASES {
        let ideal = random_monomial_ideal(&mut rng, 6, 5);
        out.push(case(format!("hilbert.bruteforce.{i:02}"), move || {
            let k = kpoly_from_monomial_ideal(&ideal)?;
            let series = hilbert_series_coefficients(&k, HILBERT_DEPTH);
            let counts: Vec<BigInt> = count_standard_monomials(&ideal, HILBERT_DEPTH)
                .into_iter()
                .map(BigInt::from)
                .collect();
            Ok(Check {
                pass: series == counts,
                expected: format!("{ideal}: {}", prefix_of(&counts)),
                computed: format!("{ideal}: {}", prefix_of(&series)),
            })
        }));
    }
}

/// `χ(P^n, O(m)) = C(m+n, n)` as a polynomial in `m`.
fn chi_line_bundle(n: i64, m: i64) -> BigInt {
    binomial_signed(m + n, n)
}

/// `χ(P^n, Ω^p(m))` from the Euler sequence.
fn chi_omega_projective(n: i64, p: i64, m: i64) -> BigInt {
    (0..=p)
        .map(|i| {
            let sign = if (p - i) % 2 == 0 { 1 } else { -1 };
            binomial(n + 1, i) * chi_line_bundle(n, m - i) * sign
        })
        .fold(BigInt::zero(), |a, b| a + b)
}

/// `χ(Z, Ω_Z^p(m))` for a smooth degree-`d` hypersurface `Z ⊂ P^n`, from the
/// restriction and conormal sequences.
fn chi_omega_hypersurface(n: i64, d: i64, p: i64, m: i64) -> BigInt {
    if p < 0 {
        return BigInt::zero();
    }
    let restricted = chi_omega_projective(n, p, m) - chi_omega_projective(n, p, m - d);
    restricted - chi_omega_hypersurface(n, d, p - 1, m - d)
}

/// `χ_y(Z_d ⊂ P^n) = sum_p χ(Ω_Z^p) y^p`, computed without motivic classes.
pub fn chi_y_hypersurface_oracle(d: u32, n: usize) -> YRational {
    let coeffs = (0..n as i64)
        .map(|p| chi_omega_hypersurface(n as i64, d as i64, p, 0))
        .collect();
    YRational::from_poly(YPoly::new(coeffs))
}

/// The form `(C(d-1,2) + 1)(y - 1)` that circulates for plane curves.
pub fn chi_y_plane_curve_variant(d: u32) -> YRational {
    let c = binomial(d as i64 - 1, 2) + BigInt::one();
    YRational::from_poly(YPoly::new(vec![-c.clone(), c]))
}

fn chi_y_hypersurface_cases(out: &mut Vec<Case>) {
    for n in [2usize, 3] {
        for d in 1..=6u32 {
            out.push(case(format!("chi_y.hypersurface.n{n}.d{d}"), move || {
                let computed = integral(&mc_smooth_hypersurface(d, n)?);
                let oracle = chi_y_hypersurface_oracle(d, n);
                let closed = if n == 2 {
                    chi_y_plane_curve_closed_form(d)
                } else {
                    chi_y_space_surface_closed_form(d)
                };
                let mut c = same(&oracle, &computed);
                c.pass &= closed == computed;
                Ok(c)
            }));
        }
    }
    out.push(case("chi_y.hypersurface.n2.plus_one_variant", || {
        let differs = (1..=6u32).all(|d| {
            mc_smooth_hypersurface(d, 2).is_ok_and(|mc| integral(&mc) != chi_y_plane_curve_variant(d))
        });
        Ok(holds("(C(d-1,2)+1)(y-1) disagrees with the computed value for d=1..6", differs))
    }));
}

fn all_cases() -> Vec<Case> {
    let mut out = Vec::new();
    table_cases(&mut out);
    projective_space_cases(&mut out);
    genus_cases(&mut out);
    hilbert_example_cases(&mut out);
    cone_cases(&mut out);
    equivariant_cases(&mut out);
    hilbert_cases(&mut out);
    chi_y_hypersurface_cases(&mut out);
    out
}

/// All registered case ids, sorted.
pub fn case_ids() -> Vec<String> {
    let mut ids: Vec<String> = all_cases().into_iter().map(|c| c.id).collect();
    ids.sort();
    ids
}

fn glob_match(pattern: &[u8], s: &[u8]) -> bool {
    match pattern.split_first() {
        None => s.is_empty(),
        Some((b'*', rest)) => (0..=s.len()).any(|i| glob_match(rest, &s[i..])),
        Some((b'?', rest)) => !s.is_empty() && glob_match(rest, &s[1..]),
        Some((&c, rest)) => s.first() == Some(&c) && glob_match(rest, &s[1..]),
    }
}

/// `None` selects everything and `""` nothing. Patterns with `*` or `?` are
/// globs over the whole id; anything else selects that id and every id
/// below it in the dotted hierarchy.
pub fn filter_matches(filter: Option<&str>, id: &str) -> bool {
    match filter {
        None => true,
        Some("") => false,
        Some(f) if f.contains(['*', '?']) => glob_match(f.as_bytes(), id.as_bytes()),
        Some(f) => id == f || id.strip_prefix(f).is_some_and(|rest| rest.starts_with('.')),
    }
}

/// Runs the selected cases in parallel; the result is ordered by id.
pub fn run_verification(filter: Option<&str>) -> Vec<VerifyOutcome> {
    let selected: Vec<Case> = all_cases()
        .into_iter()
        .filter(|c| filter_matches(filter, &c.id))
        .collect();
    let mut outcomes: Vec<VerifyOutcome> = selected
        .par_iter()
        .map(|c| match (c.run)() {
            Ok(check) => VerifyOutcome {
                id: c.id.clone(),
                expected: check.expected,
                computed: check.computed,
                pass: check.pass,
            },
            Err(e) => VerifyOutcome {
                id: c.id.clone(),
                expected: "a value".into(),
                computed: format!("error: {e}"),
                pass: false,
            },
        })
        .collect();
    outcomes.sort_by(|a, b| a.id.cmp(&b.id));
    outcomes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let ids = case_ids();
        let mut dedup = ids.clone();
        dedup.dedup();
        assert_eq!(ids.len(), dedup.len());
    }

    #[test]
    fn filters() {
        assert!(filter_matches(None, "chi_y.pn.3"));
        assert!(!filter_matches(Some(""), "chi_y.pn.3"));
        assert!(filter_matches(Some("chi_y.pn"), "chi_y.pn.3"));
        assert!(!filter_matches(Some("chi_y.p"), "chi_y.pn.3"));
        assert!(filter_matches(Some("table1.*"), "table1.nodal.mc0"));
        assert!(!filter_matches(Some("table1.*.sheaf"), "table1.nodal.mc0"));
        assert_eq!(run_verification(Some("table1.*")).len(), 18);
        assert_eq!(run_verification(Some("chi_y.pn")).len(), 11);
        assert!(run_verification(Some("")).is_empty());
    }

    #[test]
    fn oracle_values() {
        assert_eq!(chi_y_hypersurface_oracle(1, 2), y_poly(&[1, -1]));
        assert_eq!(chi_y_hypersurface_oracle(3, 2), YRational::zero());
        assert_eq!(chi_y_hypersurface_oracle(4, 3), y_poly(&[2, -20, 2]));
        assert_eq!(chi_y_hypersurface_oracle(6, 3), y_poly(&[11, -86, 11]));
        assert_eq!(chi_y_hypersurface_oracle(2, 4), alternating(3));
    }

    #[test]
    fn whole_suite_passes() {
        let failed: Vec<_> = run_verification(None).into_iter().filter(|o| !o.pass).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }
}
