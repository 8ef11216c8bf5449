//! Named verification suites producing pass/fail reports.

use std::fmt;
use std::str::FromStr;

use crate::automorphism::{twist, Automorphism};
use crate::derived::{derived_form_exact, derived_form_truncated, left_derived_form_exact};
use crate::error::{Error, Result};
use crate::figure_eight::figure_eight_scenario;
use crate::group_algebra::{GroupAlgebraElement, Side};
use crate::hopf::{antipode, coproduct, counit, is_group_like, is_primitive};
use crate::linalg::{self, RationalMatrix};
use crate::pairing::{intersection_number, ExactPairing, NablaElement, TruncatedPairing};
use crate::random::Sampler;
use crate::report::{Check, Report};
use crate::scalar::{factorial_inverse, int, rat, Rational};
use crate::series::Series;
use crate::surfaces::{include_series, include_word, ClassicalTwist, SurfaceSpec};
use crate::symplectic::{
    bernoulli_numbers, build_symplectic_expansion, check_expansion, recorrect, verify_section9, SymplecticSpace,
    S_SERIES,
};
use crate::word::GroupWord;

type GA = GroupAlgebraElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    FoxLaws,
    Hopf,
    DehnCompare,
    FigureEight,
    Nabla,
    TwistLaws,
    Symplectic,
    AppendixIdentities,
    All,
}

impl Suite {
    /// Every suite except `All`, in reporting order.
    pub const INDIVIDUAL: [Suite; 8] = [
        Suite::FoxLaws,
        Suite::Hopf,
        Suite::DehnCompare,
        Suite::FigureEight,
        Suite::Nabla,
        Suite::TwistLaws,
        Suite::Symplectic,
        Suite::AppendixIdentities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FoxLaws => "fox-laws",
            Suite::Hopf => "hopf",
            Suite::DehnCompare => "dehn-compare",
            Suite::FigureEight => "figure-eight",
            Suite::Nabla => "nabla",
            Suite::TwistLaws => "twist-laws",
            Suite::Symplectic => "symplectic",
            Suite::AppendixIdentities => "appendix-identities",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::INDIVIDUAL
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

/// Runs a suite at the given degree cap. `All` runs the individual suites concurrently and
/// merges their reports in a fixed order.
pub fn run_suite(suite: Suite, degree: usize) -> Result<Report> {
    if degree < 2 {
        return Err(Error::Domain(format!("degree cap {degree} is below 2")));
    }
    let run_one = |s: Suite| -> Report {
        let mut report = Report::new(s.name());
        let outcome = match s {
            Suite::FoxLaws => fox_laws(&mut report, degree),
            Suite::Hopf => hopf_suite(&mut report, degree),
            Suite::DehnCompare => dehn_compare(&mut report, degree),
            Suite::FigureEight => figure_eight(&mut report, degree),
            Suite::Nabla => nabla_suite(&mut report, degree),
            Suite::TwistLaws => twist_laws(&mut report, degree),
            Suite::Symplectic => symplectic_suite(&mut report, degree),
            Suite::AppendixIdentities => appendix_identities(&mut report, degree),
            Suite::All => unreachable!("handled separately"),
        };
        if let Err(e) = outcome {
            report.push(Check::with_witness("suite setup", false, e.to_string()));
        }
        report
    };
    if suite != Suite::All {
        return Ok(run_one(suite));
    }
    let reports: Vec<Report> = std::thread::scope(|scope| {
        let handles: Vec<_> = Suite::INDIVIDUAL.iter().map(|&s| scope.spawn(move || run_one(s))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut all = Report::new("all");
    for report in reports {
        all.absorb(report);
    }
    Ok(all)
}

/// Runs `count` trials; the first failing trial's witness is reported.
fn trials(name: &str, count: usize, mut trial: impl FnMut() -> Result<Option<String>>) -> Check {
    let name = format!("{name} ({count} trials)");
    for i in 0..count {
        match trial() {
            Ok(None) => {}
            Ok(Some(witness)) => return Check::with_witness(name, false, format!("trial {i}: {witness}")),
            Err(e) => return Check::with_witness(name, false, format!("trial {i}: {e}")),
        }
    }
    Check::new(name, true)
}

fn attempt(report: &mut Report, name: &str, check: impl FnOnce() -> Result<Check>) {
    match check() {
        Ok(c) => report.push(c),
        Err(e) => report.push(Check::with_witness(name, false, e.to_string())),
    }
}

fn series_differ(lhs: &Series, rhs: &Series) -> Option<String> {
    lhs.first_difference(rhs).map(|(m, l, r)| format!("monomial {:?}: {l} vs {r}", m.letters()))
}

fn exact_differ(lhs: &GA, rhs: &GA) -> Option<String> {
    (lhs != rhs).then(|| format!("{lhs} vs {rhs}"))
}

fn fail_unless(ok: bool, witness: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(witness)
}

/// Generator-by-generator comparison of two automorphisms at the smaller cap.
fn same_automorphism(name: impl Into<String>, lhs: &Automorphism, rhs: &Automorphism) -> Check {
    let name = name.into();
    for (i, (l, r)) in lhs.images().iter().zip(rhs.images()).enumerate() {
        if let Some(w) = series_differ(l, r) {
            return Check::with_witness(name, false, format!("generator {}: {w}", i + 1));
        }
    }
    Check::new(name, lhs.rank() == rhs.rank())
}

fn random_exact_pairing(sampler: &mut Sampler) -> ExactPairing {
    let n = sampler.rank();
    let matrix = (0..n).map(|_| (0..n).map(|_| sampler.element(2, 2)).collect()).collect();
    ExactPairing::new(matrix).expect("square matrix")
}

fn nontrivial_word(sampler: &mut Sampler, max_len: usize) -> GroupWord {
    loop {
        let w = sampler.word(max_len);
        if !w.is_identity() {
            return w;
        }
    }
}

fn word(rank: usize, letters: &[i32]) -> GroupWord {
    GroupWord::from_letters(rank, letters).expect("letters in range")
}

fn fox_laws(report: &mut Report, degree: usize) -> Result<()> {
    let mut s = Sampler::new(101, 2);
    report.push(trials("word multiplication is associative with inverses", 100, || {
        let (u, v, w) = (s.word(5), s.word(5), s.word(5));
        let ok = u.mul(&v).mul(&w) == u.mul(&v.mul(&w)) && u.mul(&u.inverse()).is_identity();
        Ok(fail_unless(ok, || format!("{u}, {v}, {w}")))
    }));

    let mut s = Sampler::new(102, 3);
    report.push(trials("augmentation is multiplicative and Fox rules hold", 100, || {
        let (x, y) = (s.element(3, 4), s.element(3, 4));
        let xy = &x * &y;
        if xy.augment() != x.augment() * y.augment() {
            return Ok(Some("augmentation".into()));
        }
        let mut rebuilt_left = GA::scalar(3, x.augment());
        let mut rebuilt_right = rebuilt_left.clone();
        for i in 1..=3 {
            let left = &x.fox_derivative(Side::Left, i).scale(&y.augment()) + &(&x * &y.fox_derivative(Side::Left, i));
            let right =
                &(&x.fox_derivative(Side::Right, i) * &y) + &y.fox_derivative(Side::Right, i).scale(&x.augment());
            if xy.fox_derivative(Side::Left, i) != left || xy.fox_derivative(Side::Right, i) != right {
                return Ok(Some(format!("product rule for generator {i}")));
            }
            let frame = GA::generator_minus_one(3, i);
            rebuilt_left = &rebuilt_left + &(&x.fox_derivative(Side::Left, i) * &frame);
            rebuilt_right = &rebuilt_right + &(&frame * &x.fox_derivative(Side::Right, i));
        }
        Ok(fail_unless(rebuilt_left == x && rebuilt_right == x, || "generator expansion".into()))
    }));

    let mut s = Sampler::new(103, 2);
    report.push(trials("pairing is a left and right Fox derivative", 50, || {
        let eta = random_exact_pairing(&mut s);
        let (a1, a2, b) = (s.element(2, 3), s.element(2, 3), s.element(2, 3));
        let lhs = eta.eval(&(&a1 * &a2), &b)?;
        let rhs = &eta.eval(&a1, &b)?.scale(&a2.augment()) + &(&a1 * &eta.eval(&a2, &b)?);
        if let Some(w) = exact_differ(&lhs, &rhs) {
            return Ok(Some(w));
        }
        let lhs = eta.eval(&b, &(&a1 * &a2))?;
        let rhs = &(&eta.eval(&b, &a1)? * &a2) + &eta.eval(&b, &a2)?.scale(&a1.augment());
        Ok(exact_differ(&lhs, &rhs))
    }));

    let m = degree;
    let mut s = Sampler::new(104, 2);
    report.push(trials(&format!("truncated Fox derivatives match the exact layer at cap {m}"), 50, || {
        let a = s.element(4, 5);
        let embedded = Series::embed(&a, m);
        for side in [Side::Left, Side::Right] {
            for i in 1..=2 {
                let exact = Series::embed(&a.fox_derivative(side, i), m - 1);
                if let Some(w) = series_differ(&embedded.fox_derivative(side, i), &exact) {
                    return Ok(Some(format!("{side:?} derivative {i}: {w}")));
                }
            }
        }
        Ok(None)
    }));

    let mut s = Sampler::new(105, 2);
    report.push(trials(&format!("truncated pairing and derived form match the exact layer at cap {m}"), 50, || {
        let eta = random_exact_pairing(&mut s);
        let rho = eta.completion(m);
        let (a, b) = (s.element(3, 3), s.element(3, 3));
        let (ua, ub) = (Series::embed(&a, m + 1), Series::embed(&b, m + 1));
        let pairing = Series::embed(&eta.eval(&a, &b)?, m);
        if let Some(w) = series_differ(&rho.eval(&ua, &ub)?, &pairing) {
            return Ok(Some(format!("pairing: {w}")));
        }
        let exact = Series::embed(&derived_form_exact(&eta, &a, &b)?, m);
        let truncated = derived_form_truncated(&rho, &ua, &ub)?;
        Ok(series_differ(&truncated, &exact).map(|w| format!("derived form: {w}")))
    }));

    let mut s = Sampler::new(106, 2);
    report.push(trials("sigma(a, -) is a derivation", 100, || {
        let eta = random_exact_pairing(&mut s);
        let (a, v, w) = (s.element(2, 3), s.element(2, 3), s.element(2, 3));
        let lhs = derived_form_exact(&eta, &a, &(&v * &w))?;
        let rhs = &(&derived_form_exact(&eta, &a, &v)? * &w) + &(&v * &derived_form_exact(&eta, &a, &w)?);
        Ok(exact_differ(&lhs, &rhs))
    }));

    let mut s = Sampler::new(107, 2);
    report.push(trials("sigma(ab, c) = sigma(ba, c)", 100, || {
        let eta = random_exact_pairing(&mut s);
        let (a, b, c) = (s.element(2, 3), s.element(2, 3), s.element(2, 3));
        Ok(exact_differ(&derived_form_exact(&eta, &(&a * &b), &c)?, &derived_form_exact(&eta, &(&b * &a), &c)?))
    }));

    let mut s = Sampler::new(108, 2);
    report.push(trials("sigma(I^m, A) lies in I^(m-1) for m <= 5", 100, || {
        let eta = random_exact_pairing(&mut s);
        let m = 1 + s.below(5);
        let a = s.augmentation_product(m, 2);
        let b = s.element(2, 3);
        let value = Series::embed(&derived_form_exact(&eta, &a, &b)?, m - 1);
        Ok(fail_unless(value.is_zero(), || format!("m = {m}: {value}")))
    }));

    let mut s = Sampler::new(109, 2);
    report.push(trials("sigma congruence on products modulo I^(m+n-1), m+n <= 5", 100, || {
        let eta = random_exact_pairing(&mut s);
        let m = 1 + s.below(4);
        let n = 1 + s.below(5 - m);
        let frame = |s: &mut Sampler| &GA::word(&nontrivial_word(s, 2)) - &GA::one(2);
        let cs: Vec<GA> = (0..m).map(|_| frame(&mut s)).collect();
        let ds: Vec<GA> = (0..n).map(|_| frame(&mut s)).collect();
        let product = |xs: &[GA]| xs.iter().fold(GA::one(2), |acc, x| &acc * x);
        let lhs = derived_form_exact(&eta, &product(&cs), &product(&ds))?;
        let mut rhs = GA::zero(2);
        for i in 0..m {
            let rotated: Vec<GA> = cs[i + 1..].iter().chain(&cs[..i]).cloned().collect();
            for j in 0..n {
                let dot = eta.eval(&cs[i], &ds[j])?.augment();
                let term = &(&product(&ds[..j]) * &product(&rotated)) * &product(&ds[j + 1..]);
                rhs = &rhs + &term.scale(&dot);
            }
        }
        let cap = m + n - 1;
        Ok(series_differ(&Series::embed(&lhs, cap), &Series::embed(&rhs, cap)).map(|w| format!("m={m}, n={n}: {w}")))
    }));

    let mut s = Sampler::new(110, 2);
    report.push(trials("sigma is conjugation invariant after cyclic normalization", 100, || {
        let eta = random_exact_pairing(&mut s);
        let (a, b, c) = (s.word(3), s.word(3), s.word(2));
        let (ae, be) = (GA::word(&a), GA::word(&b));
        let base = derived_form_exact(&eta, &ae, &be)?;
        let first = derived_form_exact(&eta, &GA::word(&c.mul(&a).mul(&c.inverse())), &be)?;
        if let Some(w) = exact_differ(&first, &base) {
            return Ok(Some(format!("first variable: {w}")));
        }
        let second = derived_form_exact(&eta, &ae, &GA::word(&c.mul(&b).mul(&c.inverse())))?;
        Ok(exact_differ(&second.cyclic_projection(), &base.cyclic_projection()).map(|w| format!("second: {w}")))
    }));

    let mut s = Sampler::new(111, 2);
    report.push(trials("weakly skew pairings relate left and right derived forms", 30, || {
        let eta = random_exact_pairing(&mut s);
        let skew = eta.add(&eta.transpose().scale(&int(-1)))?;
        if skew.weak_skew_witness().is_none() {
            return Ok(Some("eta - transpose(eta) not weakly skew".into()));
        }
        let (a, b) = (s.element(2, 3), s.element(2, 3));
        let left = left_derived_form_exact(&skew, &a, &b)?;
        let right = derived_form_exact(&skew, &b, &a)?;
        Ok(exact_differ(&left, &-&right))
    }));
    Ok(())
}

/// Twists covered by the Hopf suite: `(genus, curve letters, k)`.
fn sample_twists() -> Vec<(usize, Vec<i32>, Rational)> {
    vec![
        (1, vec![1], rat(1, 2)),
        (1, vec![2], rat(-1, 3)),
        (1, vec![1, 2], int(1)),
        (1, vec![1, -2], rat(1, 2)),
        (1, vec![1, 1, 2], rat(2, 3)),
        (2, vec![1], rat(1, 2)),
        (2, vec![1, 2, -1, -2], rat(1, 2)),
        (2, vec![1, 3], rat(-1, 2)),
        (2, vec![2, -3, 4], int(1)),
    ]
}

fn hopf_suite(report: &mut Report, degree: usize) -> Result<()> {
    let cap = degree + 1;
    let mut s = Sampler::new(201, 2);
    report.push(trials("coproduct is multiplicative", 20, || {
        let (u, v) = (s.series(cap, 4, 0), s.series(cap, 4, 0));
        let diff = &coproduct(&(&u * &v)) - &coproduct(&u).mul(&coproduct(&v));
        Ok(fail_unless(diff.is_zero(), || format!("{u} ; {v}")))
    }));
    let mut s = Sampler::new(202, 2);
    report.push(trials("counit and antipode axioms", 20, || {
        let u = s.series(cap, 5, 0);
        let rank = u.rank();
        let delta = coproduct(&u);
        let unit_leg = |m: &crate::series::Monomial, c: usize| {
            if m.is_empty() {
                Series::one(rank, c)
            } else {
                Series::zero(rank, c)
            }
        };
        let counit_left = delta.map_leg(0, &unit_leg).multiply_legs(&[0, 1]);
        let counit_right = delta.map_leg(1, &unit_leg).multiply_legs(&[0, 1]);
        let anti = |m: &crate::series::Monomial, c: usize| antipode(&Series::monomial(rank, c, m.letters(), int(1)));
        let convolution = delta.map_leg(0, &anti).multiply_legs(&[0, 1]);
        let expected = Series::constant(rank, cap, counit(&u));
        let ok = counit_left == u && counit_right == u && convolution == expected;
        Ok(fail_unless(ok, || format!("{u}")))
    }));
    let mut s = Sampler::new(203, 2);
    report.push(trials("antipode is anti-multiplicative and embeds inversion", 20, || {
        let (u, v) = (s.series(cap, 4, 0), s.series(cap, 4, 0));
        if let Some(w) = series_differ(&antipode(&(&u * &v)), &(&antipode(&v) * &antipode(&u))) {
            return Ok(Some(w));
        }
        let x = s.element(3, 4);
        Ok(series_differ(&antipode(&Series::embed(&x, cap)), &Series::embed(&x.bar(), cap)))
    }));
    let mut s = Sampler::new(204, 2);
    report.push(trials("group words are group-like with primitive logarithms", 20, || {
        let w = Series::embed_word(&s.word(5), cap);
        let log = w.log()?;
        Ok(fail_unless(is_group_like(&w) && is_primitive(&log) && is_group_like(&log.exp()?), || format!("{w}")))
    }));

    for (index, (genus, letters, k)) in sample_twists().into_iter().enumerate() {
        let surface = SurfaceSpec::new(genus, degree)?;
        let curve = word(surface.rank(), &letters);
        let label = format!("genus {genus} curve {} k={k}", surface.alphabet().format_word(&curve));
        let mut s = Sampler::new(205 + index as u64, surface.rank());
        let words: Vec<GroupWord> = (0..3).map(|_| s.word(4)).collect();
        attempt(report, &format!("{label}: Hopf automorphism"), || {
            let t = surface.generalized_dehn_twist(&curve, &k)?;
            let mut ok = t.is_hopf();
            for w in &words {
                ok &= t.maps_to_group_like(&Series::embed_word(w, degree))?;
            }
            Ok(Check::new(format!("{label}: Hopf automorphism"), ok))
        });
    }
    Ok(())
}

fn dehn_compare(report: &mut Report, degree: usize) -> Result<()> {
    let half = rat(1, 2);
    for (genus, preset) in [
        (1, ClassicalTwist::NonseparatingA1),
        (2, ClassicalTwist::NonseparatingA1),
        (2, ClassicalTwist::SeparatingGenusOne),
    ] {
        let name = format!("genus {genus} {preset:?}: t_1/2 equals the classical twist at cap {degree}");
        attempt(report, &name, || {
            let surface = SurfaceSpec::new(genus, degree)?;
            let generalized = surface.generalized_dehn_twist(&surface.classical_curve(preset), &half)?;
            let classical = surface.classical_dehn_twist(preset)?;
            Ok(same_automorphism(name.clone(), &generalized, &classical))
        });
        let name = format!("genus {genus} {preset:?}: classical twist fixes the boundary");
        attempt(report, &name, || {
            let surface = SurfaceSpec::new(genus, degree)?;
            let classical = surface.classical_dehn_twist(preset)?;
            Ok(Check::new(name.clone(), classical.fixes(&Series::embed_word(&surface.boundary_word(), degree))?))
        });
    }
    attempt(report, "nonseparating twist acts on homology by b -> b - a", || {
        let surface = SurfaceSpec::new(1, degree)?;
        let t = surface.classical_dehn_twist(ClassicalTwist::NonseparatingA1)?;
        let expected = vec![vec![int(1), int(-1)], vec![int(0), int(1)]];
        Ok(Check::new("nonseparating twist acts on homology by b -> b - a", t.homology_matrix() == expected))
    });

    let surface = SurfaceSpec::new(2, degree)?;
    let (a1, a2, b2) = (surface.a(1), surface.a(2), surface.b(2));
    attempt(report, "twist along a1 fixes a2 and b2", || {
        let t = surface.generalized_dehn_twist(&a1, &rat(1, 3))?;
        let ok = t.fixes(&Series::embed_word(&a2, degree))? && t.fixes(&Series::embed_word(&b2, degree))?;
        Ok(Check::new("twist along a1 fixes a2 and b2", ok))
    });
    attempt(report, "twists along disjoint a1 and a2 commute", || {
        let t1 = surface.generalized_dehn_twist(&a1, &rat(1, 3))?;
        let t2 = surface.generalized_dehn_twist(&a2, &rat(-2, 1))?;
        Ok(same_automorphism("twists along disjoint a1 and a2 commute", &t1.compose(&t2)?, &t2.compose(&t1)?))
    });
    attempt(report, "twists are natural under the inclusion of the first handle", || {
        let small = SurfaceSpec::new(1, degree)?;
        let k = rat(1, 2);
        let mut ok = true;
        for curve in [vec![1], vec![1, 2], vec![1, -2, -2]] {
            let inner = small.generalized_dehn_twist(&word(2, &curve), &k)?;
            let outer = surface.generalized_dehn_twist(&include_word(&word(2, &curve), 4), &k)?;
            for i in 1..=2 {
                let lhs = include_series(&inner.images()[i - 1], 4);
                ok &= lhs.agrees_with(&outer.images()[i - 1]);
            }
        }
        Ok(Check::new("twists are natural under the inclusion of the first handle", ok))
    });
    Ok(())
}

fn figure_eight(report: &mut Report, degree: usize) -> Result<()> {
    let cap = degree.max(5);
    for k in [rat(1, 2), int(1), int(0)] {
        let mut sub = figure_eight_scenario(&k, cap)?;
        sub.suite = format!("k={k}");
        report.absorb(sub);
    }
    Ok(())
}

fn nabla_suite(report: &mut Report, degree: usize) -> Result<()> {
    let m = degree;
    for genus in [1, 2] {
        let surface = SurfaceSpec::new(genus, m)?;
        let rho = surface.pairing();
        let nabla = surface.nabla();
        let rank = surface.rank();
        let mut s = Sampler::new(300 + genus as u64, rank);
        report.push(trials(&format!("genus {genus}: rho(w, nabla) = w - aug(w) at cap {m}"), 20, || {
            let w = Series::embed_word(&s.word(6), m + 2);
            let expected = (&w - &Series::constant(rank, m + 2, w.constant_term())).truncate(m);
            Ok(series_differ(&rho.eval(&w, nabla.series())?, &expected))
        }));
        let mut expected_form = vec![vec![int(0); rank]; rank];
        for i in 0..genus {
            expected_form[2 * i][2 * i + 1] = int(-1);
            expected_form[2 * i + 1][2 * i] = int(1);
        }
        report.push(Check::new(
            format!("genus {genus}: homological form is the standard symplectic form"),
            rho.homological_form() == expected_form && rho.is_nondegenerate(),
        ));
        report.push(Check::new(
            format!("genus {genus}: weakly skew with witness -1"),
            rho.weak_skew_witness().is_some_and(|e| e.agrees_with(&Series::constant(rank, e.cap(), int(-1)))),
        ));
        attempt(report, &format!("genus {genus}: nabla of the pairing recovers nu - 1"), || {
            Ok(Check::new(format!("genus {genus}: nabla of the pairing recovers nu - 1"), rho.nabla()? == nabla))
        });
        let mut s = Sampler::new(310 + genus as u64, rank);
        report.push(trials(
            &format!("genus {genus}: a nonzero element of A_1 pairs nontrivially with some generator"),
            20,
            || {
                let delta = s.series(m, 4, 1);
                if delta.is_zero() {
                    return Ok(None);
                }
                let mut some_nonzero = false;
                for i in 1..=rank {
                    let x = Series::embed_word(&GroupWord::generator(rank, i), m + 1);
                    some_nonzero |= !rho.eval(&x, &delta.with_cap(m + 1))?.is_zero();
                }
                Ok(fail_unless(some_nonzero, || format!("{delta}")))
            },
        ));

        let lifted = SurfaceSpec::new(genus, m + 1)?;
        let lifted_rho = lifted.pairing();
        let mut s = Sampler::new(320 + genus as u64, rank);
        report.push(trials(&format!("genus {genus}: sigma(x, -) for x in A_2 derives the pairing"), 10, || {
            let x = s.series(m + 3, 4, 2);
            let (b, c) = (Series::embed_word(&s.word(3), m + 3), Series::embed_word(&s.word(3), m + 3));
            let lhs = &lifted_rho.eval(&derived_form_truncated(&lifted_rho, &x, &b)?, &c)?
                + &lifted_rho.eval(&b, &derived_form_truncated(&lifted_rho, &x, &c)?)?;
            let rhs = derived_form_truncated(&lifted_rho, &x, &lifted_rho.eval(&b, &c)?)?;
            if lhs.cap() < m || rhs.cap() < m {
                return Err(Error::CapMismatch { left: lhs.cap().min(rhs.cap()), right: m });
            }
            Ok(series_differ(&lhs, &rhs))
        }));

        let curves: Vec<GroupWord> = if genus == 1 {
            vec![word(2, &[1]), word(2, &[2]), word(2, &[1, 2])]
        } else {
            vec![word(4, &[1]), word(4, &[1, 2, -1, -2]), word(4, &[1, 3])]
        };
        for curve in curves {
            let label = format!("genus {genus} curve {}", lifted.alphabet().format_word(&curve));
            let name = format!("{label}: twist fixes nu and preserves the pairing at cap {m}");
            attempt(report, &name, || {
                let t = lifted.generalized_dehn_twist(&curve, &rat(1, 2))?;
                let nu = Series::embed_word(&lifted.boundary_word(), m);
                let fixes = t.apply(&nu)?.agrees_with(&nu);
                let defect = t.pairing_defect(&lifted_rho)?;
                let witness = format!("fixes nu: {fixes}, pairing defect: {defect:?}");
                Ok(Check::with_witness(name.clone(), fixes && defect.is_none(), witness))
            });
        }
    }

    attempt(report, "swapping a and b neither fixes nu nor preserves the pairing", || {
        let lifted = SurfaceSpec::new(1, m + 1)?;
        let swap = Automorphism::from_words(&[lifted.b(1), lifted.a(1)], m + 1)?;
        let nu = Series::embed_word(&lifted.boundary_word(), m);
        let fixes = swap.apply(&nu)?.agrees_with(&nu);
        let preserves = swap.preserves_pairing(&lifted.pairing())?;
        Ok(Check::with_witness(
            "swapping a and b neither fixes nu nor preserves the pairing",
            !fixes && !preserves,
            format!("fixes nu: {fixes}, preserves pairing: {preserves}"),
        ))
    });
    attempt(report, "degenerate nabla is rejected", || {
        let (a, b) = (GroupWord::generator(2, 1), GroupWord::generator(2, 2));
        let disk = NablaElement::from_word(&b.mul(&a), m + 2);
        let ok = matches!(disk.pairing(), Err(Error::NotNondegenerate(_)))
            && !TruncatedPairing::inner(&Series::one(2, m)).is_nondegenerate();
        Ok(Check::new("degenerate nabla is rejected", ok))
    });
    Ok(())
}

/// `I + 2k ([alpha] . h) [alpha]` as a matrix acting on columns.
fn transvection(form: &RationalMatrix, k: &Rational, alpha: &[i64]) -> RationalMatrix {
    let n = alpha.len();
    let mut out = linalg::identity(n);
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        let dot = intersection_number(form, alpha, &e);
        for r in 0..n {
            out[r][j] += int(2) * k * &dot * int(alpha[r]);
        }
    }
    out
}

fn twist_laws(report: &mut Report, degree: usize) -> Result<()> {
    let m = degree;
    let cases: [(usize, &[i32]); 3] = [(1, &[1, 2]), (1, &[2, 2, -1]), (2, &[1, -3, 4])];
    for (genus, letters) in cases {
        let surface = SurfaceSpec::new(genus, m)?;
        let rho = surface.pairing();
        let alpha = word(surface.rank(), letters);
        let label = format!("genus {genus} curve {}", surface.alphabet().format_word(&alpha));
        let (k, l) = (rat(1, 2), rat(-1, 3));
        let t = |k: &Rational, c: &GroupWord| twist(&rho, k, c);

        let name = format!("{label}: t_k t_l = t_(k+l)");
        attempt(report, &name, || {
            Ok(same_automorphism(name.clone(), &t(&k, &alpha)?.compose(&t(&l, &alpha)?)?, &t(&(&k + &l), &alpha)?))
        });
        for power in [2i64, 3] {
            let name = format!("{label}: t_(k, alpha^{power}) = t_k^{}", power * power);
            attempt(report, &name, || {
                let lhs = t(&k, &alpha.pow(power))?;
                Ok(same_automorphism(name.clone(), &lhs, &t(&k, &alpha)?.pow(power * power)?))
            });
        }
        let name = format!("{label}: t_(k, alpha^-1) = t_(k, alpha)");
        attempt(report, &name, || Ok(same_automorphism(name.clone(), &t(&k, &alpha.inverse())?, &t(&k, &alpha)?)));
        let name = format!("{label}: t_0 is the identity and t_-k inverts t_k");
        attempt(report, &name, || {
            let id = Automorphism::identity(surface.rank(), m);
            let zero = same_automorphism(name.clone(), &t(&int(0), &alpha)?, &id);
            let inverse = same_automorphism(name.clone(), &t(&-&k, &alpha)?.compose(&t(&k, &alpha)?)?, &id);
            Ok(if zero.pass { inverse } else { zero })
        });
        let name = format!("{label}: conjugating the curve leaves the twist unchanged");
        attempt(report, &name, || {
            let c = word(surface.rank(), &[2, -1]);
            Ok(same_automorphism(name.clone(), &t(&k, &alpha.conjugate_by(&c))?, &t(&k, &alpha)?))
        });
        let name = format!("{label}: homology action is the transvection");
        attempt(report, &name, || {
            let mut ok = true;
            for kk in [k.clone(), l.clone(), int(2)] {
                let expected = transvection(&rho.homological_form(), &kk, &alpha.abelianization());
                ok &= t(&kk, &alpha)?.homology_matrix() == expected;
            }
            Ok(Check::new(name.clone(), ok))
        });
    }

    let surface = SurfaceSpec::new(2, m)?;
    let rho = surface.pairing();
    let mut s = Sampler::new(401, 4);
    report.push(trials("sigma(u, -) is a derivation on the completion", 20, || {
        let u = s.series(m + 1, 4, 1);
        let (v, w) = (s.series(m + 1, 3, 0), s.series(m + 1, 3, 0));
        let lhs = derived_form_truncated(&rho, &u, &(&v * &w))?;
        let rhs = &(&derived_form_truncated(&rho, &u, &v)? * &w) + &(&v * &derived_form_truncated(&rho, &u, &w)?);
        Ok(series_differ(&lhs, &rhs))
    }));
    let mut s = Sampler::new(402, 4);
    report.push(trials("sigma(c a c^-1, -) = sigma(a, -) for group-like a", 20, || {
        let (a, c, b) = (s.word(3), s.word(2), s.word(3));
        let conj = c.mul(&a).mul(&c.inverse());
        let target = Series::embed_word(&b, m + 1);
        let lhs = derived_form_truncated(&rho, &Series::embed_word(&conj, m + 1), &target)?;
        let rhs = derived_form_truncated(&rho, &Series::embed_word(&a, m + 1), &target)?;
        Ok(series_differ(&lhs, &rhs))
    }));
    let mut s = Sampler::new(403, 4);
    report.push(trials("sigma((c-1)^2, b) = 2 (c . b)(c - 1) modulo degree 2", 20, || {
        let (c, b) = (nontrivial_word(&mut s, 3), s.word(3));
        let cm1 = &Series::embed_word(&c, m + 1) - &Series::one(4, m + 1);
        let d_b = derived_form_truncated(&rho, &cm1.pow(2), &Series::embed_word(&b, m + 1))?.truncate(2);
        let dot = intersection_number(&rho.homological_form(), &c.abelianization(), &b.abelianization());
        Ok(series_differ(&d_b, &cm1.truncate(2).scale(&(int(2) * dot))))
    }));

    attempt(report, "twist fixes curves with vanishing pairing", || {
        let name = "twist fixes curves with vanishing pairing";
        let mut s = Sampler::new(404, 3);
        let mut matrix: Vec<Vec<Series>> = (0..3).map(|_| (0..3).map(|_| s.series(m, 4, 0)).collect()).collect();
        matrix[0][0] = s.series(m, 4, 1);
        matrix[0][1] = Series::zero(3, m);
        let supplied = TruncatedPairing::new(matrix)?;
        let alpha = GroupWord::generator(3, 1);
        let t = twist(&supplied, &rat(3, 2), &alpha)?;
        let a = Series::embed_word(&alpha, m + 1);
        for letters in [vec![2], vec![2, 2], vec![-2]] {
            let b = Series::embed_word(&word(3, &letters), m + 1);
            if !supplied.eval(&a, &b)?.is_zero() {
                return Ok(Check::with_witness(name, false, format!("rho(x1, {letters:?}) is nonzero")));
            }
            if !t.fixes(&b.truncate(m))? {
                return Ok(Check::with_witness(name, false, format!("{letters:?} moved")));
            }
        }
        let moved = !t.fixes(&Series::embed_word(&GroupWord::generator(3, 3), m))?;
        Ok(Check::with_witness(name, moved, format!("x3 moved: {moved}")))
    });

    for depth in [3usize, 4].into_iter().filter(|&d| d <= m) {
        let name = format!("twist modulo degree {depth} sees the curve only modulo depth-{depth} commutators");
        attempt(report, &name, || {
            let low = SurfaceSpec::new(2, depth)?;
            let generators = [low.a(2), low.b(1), low.b(2), low.a(1)];
            let mut gamma = generators[0].clone();
            for i in 1..depth {
                gamma = gamma.commutator(&generators[i % generators.len()]);
            }
            let alpha = low.a(1).mul(&low.b(2));
            let lhs = low.generalized_dehn_twist(&alpha, &rat(1, 2))?;
            let rhs = low.generalized_dehn_twist(&alpha.mul(&gamma), &rat(1, 2))?;
            Ok(same_automorphism(name.clone(), &lhs, &rhs))
        });
    }

    attempt(report, "non-isotropic curves are rejected", || {
        let squares = &Series::monomial(2, m + 2, &[1, 1], int(1)) + &Series::monomial(2, m + 2, &[2, 2], int(1));
        let rho = NablaElement::new(squares)?.pairing()?;
        let rejected = matches!(twist(&rho, &int(1), &GroupWord::generator(2, 1)), Err(Error::Isotropy(_)));
        Ok(Check::new("non-isotropic curves are rejected", rejected))
    });
    Ok(())
}

fn symplectic_suite(report: &mut Report, degree: usize) -> Result<()> {
    let cap = (degree + 2).max(5);
    let expansion = build_symplectic_expansion(1, cap)?;
    let mut conditions = check_expansion(&expansion)?;
    conditions.suite = format!("genus 1 cap {cap}");
    report.absorb(conditions);
    report.push(Check::new("corrector is idempotent", !recorrect(&expansion)?));
    let surface = SurfaceSpec::new(1, cap - 2)?;
    let mut diagrams = verify_section9(&surface, &expansion, 10, 501)?;
    diagrams.suite = format!("diagrams at cap {}", cap - 2);
    report.absorb(diagrams);

    let genus_two_cap = degree.min(4);
    let expansion = build_symplectic_expansion(2, genus_two_cap)?;
    let mut conditions = check_expansion(&expansion)?;
    conditions.suite = format!("genus 2 cap {genus_two_cap}");
    report.absorb(conditions);

    for genus in [1, 2] {
        let space = SymplecticSpace::new(genus)?;
        let n = space.dimension();
        let c = 6;
        let omega = space.omega(c);
        let e = omega.scale(&int(-1)).exp()?;
        let mut ok = true;
        for i in 1..=n {
            let h = Series::var(n, c, i);
            ok &= space.tensorial_rho(&h, &e).agrees_with(&h);
            ok &= space.contraction(&h, &omega)?.agrees_with(&h.scale(&int(-1)));
        }
        report.push(Check::new(format!("genus {genus}: rho(h, e^-omega) = h and h contracted with omega is -h"), ok));
        let mut s = Sampler::new(510 + genus as u64, n);
        report.push(trials(&format!("genus {genus}: omega is central for the derivation pairing"), 10, || {
            let v = s.series(c, 5, 0);
            let u = s.series(c, 5, 2).homogeneous_part(2);
            let ok = space.derivation_pairing(&omega, &v).is_zero() && space.derivation_pairing(&u, &omega).is_zero();
            Ok(fail_unless(ok, || format!("{v} ; {u}")))
        }));
    }
    let b = bernoulli_numbers(S_SERIES.len());
    let matches = S_SERIES.iter().enumerate().all(|(power, &(p, q))| {
        let n = power + 1;
        let sign = if n % 2 == 0 { int(-1) } else { int(1) };
        rat(p, q) == &sign * &b[n] * factorial_inverse(n)
    });
    report.push(Check::new("s(z) coefficients come from Bernoulli numbers", matches));
    Ok(())
}

/// Baker-Campbell-Hausdorff series through degree 5.
fn bch_through_degree_five(x: &Series, y: &Series) -> Series {
    let br = |a: &Series, b: &Series| a.commutator(b);
    let xy = br(x, y);
    let yx = br(y, x);
    let mut z = x + y;
    z = &z + &xy.scale(&rat(1, 2));
    z = &z + &(&br(x, &xy) + &br(y, &yx)).scale(&rat(1, 12));
    z = &z - &br(y, &br(x, &xy)).scale(&rat(1, 24));
    let yyyyx = br(y, &br(y, &br(y, &yx)));
    let xxxxy = br(x, &br(x, &br(x, &xy)));
    z = &z - &(&yyyyx + &xxxxy).scale(&rat(1, 720));
    let xyyyx = br(x, &br(y, &br(y, &yx)));
    let yxxxy = br(y, &br(x, &br(x, &xy)));
    z = &z + &(&xyyyx + &yxxxy).scale(&rat(1, 360));
    let yxyxy = br(y, &br(x, &br(y, &xy)));
    let xyxyx = br(x, &br(y, &br(x, &yx)));
    &z + &(&yxyxy + &xyxyx).scale(&rat(1, 120))
}

fn appendix_identities(report: &mut Report, degree: usize) -> Result<()> {
    attempt(report, "log(e^X e^Y) matches BCH through degree 5", || {
        let (x, y) = (Series::var(2, 6, 1), Series::var(2, 6, 2));
        let lhs = (&x.exp()? * &y.exp()?).log()?;
        Ok(Check::series_eq("log(e^X e^Y) matches BCH through degree 5", &lhs, &bch_through_degree_five(&x, &y)))
    });
    let cap = degree.max(5);
    let mut s = Sampler::new(601, 2);
    report.push(trials(&format!("e^u v e^-u = sum ad_u^k(v)/k! at cap {cap}"), 20, || {
        let (u, v) = (s.series(cap, 4, 1), s.series(cap, 4, 0));
        let lhs = &(&u.exp()? * &v) * &u.scale(&int(-1)).exp()?;
        let mut rhs = Series::zero(2, cap);
        let mut term = v.clone();
        for k in 0..cap {
            rhs = &rhs + &term.scale(&factorial_inverse(k));
            term = u.commutator(&term);
        }
        Ok(series_differ(&lhs, &rhs))
    }));
    let mut s = Sampler::new(602, 2);
    report.push(trials("log and exp are mutually inverse", 20, || {
        let u = s.series(cap, 5, 1);
        let one_plus = &Series::one(2, cap) + &u;
        if let Some(w) = series_differ(&one_plus.log()?.exp()?, &one_plus) {
            return Ok(Some(format!("exp(log(1+u)): {w}")));
        }
        Ok(series_differ(&u.exp()?.log()?, &u).map(|w| format!("log(exp(u)): {w}")))
    }));
    let mut s = Sampler::new(603, 2);
    report.push(trials("log((1+u)^m) = m log(1+u) for m in -2..=3", 10, || {
        let one_plus = &Series::one(2, cap) + &s.series(cap, 4, 1);
        let log = one_plus.log()?;
        for power in -2i64..=3 {
            let raised = if power < 0 {
                one_plus.inverse()?.pow(power.unsigned_abs() as usize)
            } else {
                one_plus.pow(power as usize)
            };
            if let Some(w) = series_differ(&raised.log()?, &log.scale(&int(power))) {
                return Ok(Some(format!("m = {power}: {w}")));
            }
        }
        Ok(None)
    }));
    report.push(Check::new(
        "log(1 + X) = X - X^2/2 + X^3/3 modulo degree 4",
        (&Series::one(1, 4) + &Series::var(1, 4, 1)).log()?
            == Series::from_terms(1, 4, [(vec![1u8], int(1)), (vec![1, 1], rat(-1, 2)), (vec![1, 1, 1], rat(1, 3))])?,
    ));
    Ok(())
}
