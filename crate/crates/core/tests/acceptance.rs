//! Acceptance run. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any fails. Pass criterion numbers as arguments to run a subset.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rmt_kernels::correlations::{
    finite_beta2, g_w_closed_form_beta4, g_w_from_k, pfaffian, pfaffian_matrix, r_k_beta2, r_k_pfaffian,
    FiniteMatrixKernel, MatrixKernel,
};
use rmt_kernels::ensembles::{compare_density, sample_spectra, sample_spectrum, EnsembleSpec, Family, Reference};
use rmt_kernels::finite_kernels::{
    charpoly_expectation_mc, finite_kernel, ln_weight, op_hermite_complex, op_laguerre_complex, orthogonality_check,
    orthogonality_matrix, skew_inner_products, skew_op_prekernel, McEstimate, QuadControls, WeightSpec,
};
use rmt_kernels::limiting_kernels::{
    airy_k2_integral, airy_k2_ratio, bessel_k2_integral, bessel_k2_ratio, evaluate, hermitian_limit_regular_part,
    sine_k2_integral, sine_k2_ratio, Element, KernelFamily, KernelPoint,
};
use rmt_kernels::linalg::{determinant, CMatrix};
use rmt_kernels::scaling_limits::{convergence_study, MicroGrid, Observable, RegimeKind, ScalingRegime};
use rmt_kernels::specfun::selftest;
use rmt_kernels::{Beta, Complex64};

type Outcome = Result<String, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Collects failed checks; the criterion passes when none were recorded.
#[derive(Default)]
struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, summary: String) -> Outcome {
        if self.failures.is_empty() {
            Ok(summary)
        } else {
            let n = self.failures.len();
            let mut shown: Vec<String> = self.failures.into_iter().take(4).collect();
            if n > shown.len() {
                shown.push(format!("{} more", n - shown.len()));
            }
            Err(format!("{summary}; {}", shown.join("; ")))
        }
    }
}

fn specfun_corpus() -> Outcome {
    let cases = selftest::run().map_err(fail)?;
    let mut checks = Checks::default();
    let mut worst: f64 = 0.0;
    for case in &cases {
        worst = worst.max(case.residual);
        checks.require(case.passed(), || format!("{}: residual {:.2e} > {:.0e}", case.name, case.residual, case.tolerance));
    }
    checks.finish(format!("{} cases, max residual {worst:.2e}", cases.len()))
}

fn dual_representations() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let mut checks = Checks::default();
    let mut worst = [0.0f64; 3];
    for _ in 0..20 {
        let (x1, x2) = (rng.random_range(-6.0..4.0), rng.random_range(-6.0..4.0));
        let d = (airy_k2_ratio(x1, x2).map_err(fail)? - airy_k2_integral(x1, x2).map_err(fail)?).abs();
        worst[0] = worst[0].max(d);
        checks.require(d <= 1e-9, || format!("airy ({x1}, {x2}): {d:.2e}"));

        let (x1, x2) = (rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let d = (sine_k2_ratio(x1, x2) - sine_k2_integral(x1, x2).map_err(fail)?).abs();
        worst[1] = worst[1].max(d);
        checks.require(d <= 1e-9, || format!("sine ({x1}, {x2}): {d:.2e}"));

        let nu = rng.random_range(0..3usize);
        let (x1, x2) = (rng.random_range(0.01..40.0), rng.random_range(0.01..40.0));
        let d = (bessel_k2_ratio(nu, x1, x2).map_err(fail)? - bessel_k2_integral(nu, x1, x2).map_err(fail)?).abs();
        worst[2] = worst[2].max(d);
        checks.require(d <= 1e-9, || format!("bessel ν={nu} ({x1}, {x2}): {d:.2e}"));
    }
    checks.finish(format!("max |ratio − integral|: airy {:.1e}, sine {:.1e}, bessel {:.1e}", worst[0], worst[1], worst[2]))
}

fn orthogonality() -> Outcome {
    let controls = QuadControls::default();
    let mut checks = Checks::default();
    let mut worst: f64 = 0.0;
    let planar = [
        ("ginibre τ=0", WeightSpec::ginibre(Beta::Two, 0.0)),
        ("ginibre τ=0.5", WeightSpec::ginibre(Beta::Two, 0.5)),
        ("chiral ν=1 τ=0.4", WeightSpec::chiral(Beta::Two, 0.4, 1)),
    ];
    for (label, spec) in planar {
        let m = orthogonality_matrix(&spec, 5, &controls).map_err(fail)?;
        let s = &m.values;
        for k in 0..=5 {
            checks.require(s[k][k].re > 0.0, || format!("{label}: h_{k} = {}", s[k][k]));
            for l in (0..=5).filter(|&l| l != k) {
                let r = s[k][l].norm() / (s[k][k].re * s[l][l].re).sqrt();
                worst = worst.max(r);
                checks.require(r < 1e-6, || format!("{label} ⟨P_{k},P_{l}⟩/h = {r:.2e}"));
            }
        }
    }
    let mut worst_skew: f64 = 0.0;
    for tau in [0.0, 0.5] {
        let m = skew_inner_products(&WeightSpec::ginibre(Beta::Four, tau), 3, &controls).map_err(fail)?;
        let s = &m.values;
        let scale = |k: usize| s[2 * (k / 2)][2 * (k / 2) + 1].norm();
        for k in 0..=3 {
            checks.require(scale(k) > 0.0, || format!("β=4 τ={tau}: vanishing norm at {k}"));
            for l in 0..=3 {
                if k / 2 == l / 2 && k != l {
                    continue;
                }
                let r = s[k][l].norm() / (scale(k) * scale(l)).sqrt();
                worst_skew = worst_skew.max(r);
                checks.require(r < 1e-5, || format!("β=4 τ={tau} ⟨Q_{k},Q_{l}⟩ = {r:.2e} of scale"));
            }
        }
    }
    checks.finish(format!("max residual {worst:.1e} (planar), {worst_skew:.1e} (skew, β=4)"))
}

const MC_SAMPLES: usize = 100_000;

fn ensemble(beta: Beta, family: Family, tau: f64, nu: usize) -> EnsembleSpec {
    EnsembleSpec { beta, family, n: 2, tau, nu }
}

fn weight_spec(beta: Beta, family: Family, tau: f64, nu: usize) -> WeightSpec {
    match family {
        Family::Ginibre => WeightSpec::ginibre(beta, tau),
        _ => WeightSpec::chiral(beta, tau, nu),
    }
}

fn charpoly_identities() -> Outcome {
    let mut checks = Checks::default();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut seed = 100;
    let mut next_seed = || {
        seed += 1;
        seed
    };

    // ⟨det(z − J)⟩_n is the monic orthogonal polynomial of degree n
    let pts = [c(0.8, 0.4), c(-1.2, 0.9)];
    for (family, tau, nu) in [(Family::Ginibre, 0.5, 0), (Family::ChiralNonhermitian, 0.4, 1)] {
        let spec = ensemble(Beta::Two, family, tau, nu);
        for n in 1..=4 {
            let e = charpoly_expectation_mc(&spec, n, &pts, &[], MC_SAMPLES, next_seed()).map_err(fail)?;
            for (est, &z) in e.det.iter().zip(&pts) {
                let p = match family {
                    Family::Ginibre => op_hermite_complex(n, tau, z),
                    _ => op_laguerre_complex(n, nu, tau, z),
                };
                let d = est.deviation(p);
                worst = worst.max(d);
                count += 1;
                checks.require(d < 3.0, || format!("{family} n={n} z={z}: {d:.2} s.e."));
            }
        }
    }

    // β=2 kernel = √(w(u)w(v)) ⟨det(u − J) det(v − J†)⟩_{N−1} / h_{N−1}
    let (u, v) = (c(0.6, 0.3), c(-0.2, -0.5));
    for (family, tau, nu) in [(Family::Ginibre, 0.5, 0), (Family::ChiralNonhermitian, 0.4, 1)] {
        let ws = weight_spec(Beta::Two, family, tau, nu);
        for n in [4, 6] {
            let e = charpoly_expectation_mc(&ensemble(Beta::Two, family, tau, nu), n - 1, &[], &[(u, v)], MC_SAMPLES, next_seed())
                .map_err(fail)?;
            let (h, _) = orthogonality_check(n - 1, n - 1, &ws, &QuadControls::default()).map_err(fail)?;
            let scale = (0.5 * (ln_weight(&ws, u).map_err(fail)? + ln_weight(&ws, v).map_err(fail)?)).exp() / h.re;
            let est = McEstimate { mean: e.det_pair[0].mean * scale, stderr: e.det_pair[0].stderr * scale };
            let k = finite_kernel(&ws, n, u, v).map_err(fail)?;
            let d = est.deviation(k);
            worst = worst.max(d);
            count += 1;
            checks.require(d < 3.0, || format!("β=2 {family} N={n} kernel: {d:.2} s.e."));
        }
    }

    // β=1,4 pre-kernel ∝ (u − v) ⟨det(u − J) det(v − J†)⟩_{N−2}: constant real ratio, antisymmetric
    let pairs = [(c(0.6, 0.3), c(-0.2, -0.5)), (c(1.1, -0.4), c(0.3, 0.8)), (c(-0.7, 0.2), c(0.9, 0.1))];
    let swapped: Vec<_> = pairs.iter().map(|&(a, b)| (b, a)).collect();
    for (beta, family, nu) in [(Beta::Four, Family::Ginibre, 0), (Beta::One, Family::Ginibre, 0), (Beta::Four, Family::ChiralNonhermitian, 1)] {
        let tau = 0.4;
        let ws = weight_spec(beta, family, tau, nu);
        let spec = ensemble(beta, family, tau, nu);
        for n in [4, 6] {
            let s = next_seed();
            let e = charpoly_expectation_mc(&spec, n - 2, &[], &pairs, MC_SAMPLES, s).map_err(fail)?;
            let ratios: Vec<(Complex64, f64)> = pairs
                .iter()
                .zip(&e.det_pair)
                .map(|(&(a, b), est)| {
                    let k = finite_kernel(&ws, n, a, b)?;
                    let r = k / ((a - b) * est.mean);
                    Ok((r, r.norm() * est.stderr / est.mean.norm()))
                })
                .collect::<rmt_kernels::Result<_>>()
                .map_err(fail)?;
            for r in &ratios[1..] {
                let d = (r.0 - ratios[0].0).norm() / (r.1 + ratios[0].1);
                worst = worst.max(d);
                count += 1;
                checks.require(d < 3.0, || format!("β={beta} {family} N={n}: ratio spread {d:.2} s.e."));
            }
            for r in &ratios {
                let d = r.0.im.abs() / r.1;
                worst = worst.max(d);
                count += 1;
                checks.require(d < 3.0, || format!("β={beta} {family} N={n}: Im ratio {d:.2} s.e."));
            }
            let e2 = charpoly_expectation_mc(&spec, n - 2, &[], &swapped, MC_SAMPLES, s).map_err(fail)?;
            for (i, &(a, b)) in pairs.iter().enumerate() {
                let sum = (a - b) * e.det_pair[i].mean + (b - a) * e2.det_pair[i].mean;
                let se = (a - b).norm() * (e.det_pair[i].stderr + e2.det_pair[i].stderr);
                let d = sum.norm() / se;
                worst = worst.max(d);
                count += 1;
                checks.require(d < 3.0, || format!("β={beta} {family} N={n}: antisymmetry {d:.2} s.e."));
            }
        }
    }
    checks.finish(format!("{count} estimates at {MC_SAMPLES} samples, worst {worst:.2} s.e."))
}

fn density_match() -> Outcome {
    let mut checks = Checks::default();
    let seed = 1;
    let ginue = EnsembleSpec::new(Beta::Two, Family::Ginibre, 100, 0.5, 0).map_err(fail)?;
    let cmp = compare_density(&sample_spectra(&ginue, seed, 200).map_err(fail)?, Reference::FiniteKernel, 8, 4).map_err(fail)?;
    let plateau = cmp.plateau.unwrap_or(f64::NAN);
    checks.require(cmp.l1_relative() < 0.05, || format!("GinUE L¹/N = {:.4}", cmp.l1_relative()));
    checks.require(plateau < 0.1, || format!("GinUE plateau deviation {plateau:.4}"));

    let mut hermitian = Vec::new();
    for (label, family, reference) in [("GUE", Family::WignerDyson, Reference::Semicircle), ("LUE", Family::WishartLaguerre, Reference::MarchenkoPastur)] {
        let spec = EnsembleSpec::new(Beta::Two, family, 100, 0.0, 0).map_err(fail)?;
        let cmp = compare_density(&sample_spectra(&spec, seed, 200).map_err(fail)?, reference, 16, 1).map_err(fail)?;
        checks.require(cmp.l1_relative() < 0.05, || format!("{label} L¹/N = {:.4}", cmp.l1_relative()));
        hermitian.push(format!("{label} {:.4}", cmp.l1_relative()));
    }
    checks.finish(format!("GinUE L¹/N {:.4}, plateau {plateau:.3}; {}", cmp.l1_relative(), hermitian.join(", ")))
}

fn weak_limits() -> Outcome {
    let mut checks = Checks::default();
    let mut lines = Vec::new();
    let bulk = ScalingRegime::new(RegimeKind::Bulk, 50, 1.0).map_err(fail)?;
    let t = convergence_study(&bulk, Beta::Two, Observable::Kernel, &MicroGrid::default_for(RegimeKind::Bulk), &[50, 100, 200, 400])
        .map_err(fail)?;
    checks.require(t.strictly_decreasing(), || format!("bulk not strictly decreasing: {:?}", t.rows.iter().map(|r| r.sup_dev).collect::<Vec<_>>()));
    checks.require(t.final_relative() < 1e-2, || format!("bulk final relative {:.2e}", t.final_relative()));
    lines.push(format!("bulk {:.1e}", t.final_relative()));

    let cases = [(RegimeKind::SoftEdge, 0), (RegimeKind::HardEdge, 0), (RegimeKind::HardEdge, 1)];
    for (kind, nu) in cases {
        let ns = kind.default_ns();
        let regime = ScalingRegime::new(kind, ns[0], 1.0).map_err(fail)?.with_nu(nu).map_err(fail)?;
        let t = convergence_study(&regime, Beta::Two, Observable::Kernel, &MicroGrid::default_for(kind), &ns).map_err(fail)?;
        let devs: Vec<f64> = t.rows.iter().map(|r| r.sup_dev).collect();
        checks.require(t.decreasing_trend(), || format!("{kind} ν={nu}: no decreasing trend {devs:?}"));
        let first = devs.first().copied().unwrap_or(f64::NAN);
        lines.push(format!("{kind} ν={nu} {first:.1e}→{:.1e}", devs.last().copied().unwrap_or(f64::NAN)));
    }
    checks.finish(lines.join(", "))
}

fn hermitian_limits() -> Outcome {
    let mut checks = Checks::default();
    let mut lines = Vec::new();
    let cases = [
        (KernelFamily::Sine, Beta::Two, Element::K, 0),
        (KernelFamily::Airy, Beta::Two, Element::K, 0),
        (KernelFamily::Bessel, Beta::Two, Element::K, 1),
        (KernelFamily::Sine, Beta::One, Element::GReal, 0),
        (KernelFamily::Sine, Beta::One, Element::GCom, 0),
        (KernelFamily::Airy, Beta::One, Element::GCom, 0),
        (KernelFamily::Bessel, Beta::One, Element::GCom, 1),
    ];
    for (family, beta, element, nu) in cases {
        let dev = |sigma: f64| -> Result<f64, String> {
            let p = KernelPoint::complex(family, beta, element, sigma, c(0.7, 0.0), c(1.3, 0.0)).with_nu(nu);
            Ok(hermitian_limit_regular_part(&p).map_err(fail)?.deviation())
        };
        let (coarse, fine) = (dev(1e-2)?, dev(1e-3)?);
        checks.require(fine < coarse, || format!("{family} β={beta} {element}: {coarse:.2e} → {fine:.2e}"));
        lines.push(format!("{family}/{beta}/{element} {coarse:.1e}→{fine:.1e}"));
    }
    checks.finish(lines.join(", "))
}

fn pfaffian_kernels() -> Vec<(&'static str, FiniteMatrixKernel)> {
    let make = |spec: WeightSpec, n: usize| FiniteMatrixKernel::new(spec, n).unwrap();
    vec![
        ("ginse", make(WeightSpec::ginibre(Beta::Four, 0.3), 6)),
        ("ginoe", make(WeightSpec::ginibre(Beta::One, 0.3), 6)),
        ("chiral β=4", make(WeightSpec::chiral(Beta::Four, 0.4, 1), 4)),
        ("chiral β=1", make(WeightSpec::chiral(Beta::One, 0.4, 1), 4)),
    ]
}

fn random_point(rng: &mut ChaCha8Rng, allow_real: bool) -> Complex64 {
    let re = rng.random_range(-1.5..1.5);
    if allow_real && rng.random_bool(0.4) {
        c(re, 0.0)
    } else {
        c(re, rng.random_range(0.1..1.5) * if rng.random_bool(0.5) { 1.0 } else { -1.0 })
    }
}

fn line_value(family: KernelFamily, beta: Beta, element: Element, nu: usize, x1: f64, x2: f64) -> Result<Complex64, String> {
    Ok(evaluate(&KernelPoint::real(family, beta, element, x1, x2).with_nu(nu)).map_err(fail)?.smooth)
}

fn structure_invariants() -> Outcome {
    let mut checks = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let kernels = pfaffian_kernels();

    // pre-kernel antisymmetry
    let mut worst_anti: f64 = 0.0;
    for (name, kernel) in &kernels {
        for _ in 0..10 {
            let allow_real = kernel.beta() == Beta::One;
            let (u, v) = (random_point(&mut rng, allow_real), random_point(&mut rng, allow_real));
            let a = kernel.k(u, v).map_err(fail)?;
            let b = kernel.k(v, u).map_err(fail)?;
            let r = (a + b).norm() / a.norm().max(f64::MIN_POSITIVE);
            worst_anti = worst_anti.max(r);
            checks.require(r <= 32.0 * f64::EPSILON, || format!("{name}: K(u,v) + K(v,u) = {:.1e}·|K|", r));
            let diag = kernel.k(u, u).map_err(fail)?.norm();
            checks.require(diag == 0.0, || format!("{name}: K(u,u) = {diag:.1e}"));
        }
    }

    // Pf² = det on correlation matrices and random antisymmetric matrices
    let mut worst_pf: f64 = 0.0;
    let mut pf_check = |m: &CMatrix, label: &str, checks: &mut Checks| -> Result<(), String> {
        let pf = pfaffian(m).map_err(fail)?;
        let det = determinant(m).map_err(fail)?;
        // Hadamard's bound ∏‖row‖ ≥ |det| is the scale of rounding in both; finite-rank
        // kernels make some correlation matrices exactly singular, where |det| is noise
        let hadamard: f64 = (0..m.rows).map(|i| (0..m.cols).map(|j| m[(i, j)].norm_sqr()).sum::<f64>().sqrt()).product();
        let r = (pf * pf - det).norm() / hadamard.max(f64::MIN_POSITIVE);
        worst_pf = worst_pf.max(r);
        checks.require(r <= 1e-10, || format!("{label}: |Pf² − det| = {r:.1e} of ∏‖row‖"));
        Ok(())
    };
    for (name, kernel) in &kernels {
        for k in 2..=4 {
            let pts: Vec<Complex64> = (0..k).map(|_| random_point(&mut rng, kernel.beta() == Beta::One)).collect();
            pf_check(&pfaffian_matrix(kernel, &pts).map_err(fail)?, name, &mut checks)?;
        }
    }
    for dim in [2, 4, 6, 8, 10] {
        let mut m = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let x = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                m[(i, j)] = x;
                m[(j, i)] = -x;
            }
        }
        pf_check(&m, &format!("random {dim}×{dim}"), &mut checks)?;
    }

    // R_k ≥ 0 and R₂(z, z) = 0
    let mut min_r: f64 = f64::INFINITY;
    let mut worst_rep: f64 = 0.0;
    for (name, kernel) in &kernels {
        for k in 1..=3 {
            for _ in 0..4 {
                let pts: Vec<Complex64> = (0..k).map(|_| random_point(&mut rng, kernel.beta() == Beta::One)).collect();
                let r = r_k_pfaffian(kernel, &pts).map_err(fail)?;
                min_r = min_r.min(r);
                checks.require(r >= -1e-8, || format!("{name}: R_{k}({pts:?}) = {r:.2e}"));
            }
        }
        let mut coincident = vec![c(0.4, 0.6)];
        if kernel.beta() == Beta::One {
            coincident.push(c(0.4, 0.0));
        }
        for z in coincident {
            let r2 = r_k_pfaffian(kernel, &[z, z]).map_err(fail)?;
            worst_rep = worst_rep.max(r2.abs());
            checks.require(r2.abs() <= 1e-8, || format!("{name}: R₂({z}, {z}) = {r2:.2e}"));
        }
    }
    for (name, spec) in [("ginue", WeightSpec::ginibre(Beta::Two, 0.5)), ("chiral β=2", WeightSpec::chiral(Beta::Two, 0.4, 1))] {
        let kernel = finite_beta2(spec, 8);
        for k in 1..=3 {
            for _ in 0..4 {
                let pts: Vec<Complex64> = (0..k).map(|_| random_point(&mut rng, false)).collect();
                let r = r_k_beta2(&kernel, &pts).map_err(fail)?;
                min_r = min_r.min(r);
                checks.require(r >= -1e-8, || format!("{name}: R_{k} = {r:.2e}"));
            }
        }
        let z = c(0.4, 0.6);
        let r2 = r_k_beta2(&kernel, &[z, z]).map_err(fail)?;
        worst_rep = worst_rep.max(r2.abs());
        checks.require(r2.abs() <= 1e-8, || format!("{name}: R₂(z, z) = {r2:.2e}"));
    }

    // β=1 spectra are closed under conjugation
    let mut spectra = 0;
    for (family, nu) in [(Family::Ginibre, 0), (Family::ChiralNonhermitian, 1)] {
        let spec = EnsembleSpec::new(Beta::One, family, 40, 0.3, nu).map_err(fail)?;
        for i in 0..20 {
            let eigs = sample_spectrum(&spec, 12, i).map_err(fail)?.eigenvalues;
            let scale = eigs.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let mut unmatched: Vec<Complex64> = eigs.clone();
            for z in &eigs {
                let target = z.conj();
                let best = unmatched
                    .iter()
                    .enumerate()
                    .min_by(|a, b| (a.1 - target).norm().total_cmp(&(b.1 - target).norm()))
                    .map(|(j, w)| (j, (w - target).norm()));
                match best {
                    Some((j, d)) if d <= 1e-8 * scale => {
                        unmatched.swap_remove(j);
                    }
                    other => {
                        checks.require(false, || format!("{family} sample {i}: {z} has no conjugate partner ({other:?})"));
                        break;
                    }
                }
            }
            spectra += 1;
        }
    }

    // derivative and integral relations between the line elements
    let h = 1e-4;
    let mut worst_fd: f64 = 0.0;
    let mut relation = |label: String, lhs: Complex64, rhs: Complex64, checks: &mut Checks| {
        let d = (lhs - rhs).norm();
        worst_fd = worst_fd.max(d);
        checks.require(d <= 1e-6, || format!("{label}: {lhs} vs {rhs}"));
    };
    // (family, β, ν, variable of ∂G, sign of G in ∂W/∂x₁ or None)
    let relations = [
        (KernelFamily::Airy, Beta::Four, 0, 2, Some(-1.0)),
        (KernelFamily::Airy, Beta::One, 0, 2, None),
        (KernelFamily::Sine, Beta::Four, 0, 1, Some(-1.0)),
        (KernelFamily::Sine, Beta::One, 0, 2, Some(1.0)),
        (KernelFamily::Bessel, Beta::One, 0, 2, Some(1.0)),
        (KernelFamily::Bessel, Beta::One, 1, 2, Some(1.0)),
        (KernelFamily::Bessel, Beta::One, 2, 2, Some(1.0)),
    ];
    for (family, beta, nu, var, w_sign) in relations {
        let at = |e: Element, x1: f64, x2: f64| line_value(family, beta, e, nu, x1, x2);
        for _ in 0..3 {
            let (x1, x2) = match family {
                KernelFamily::Bessel => (rng.random_range(0.5..8.0), rng.random_range(0.5..8.0)),
                _ => (rng.random_range(-2.5..2.0), rng.random_range(-2.5..2.0)),
            };
            let k = at(Element::K, x1, x2)?;
            let dg = if var == 1 {
                (at(Element::G, x1 + h, x2)? - at(Element::G, x1 - h, x2)?) / (2.0 * h)
            } else {
                (at(Element::G, x1, x2 + h)? - at(Element::G, x1, x2 - h)?) / (2.0 * h)
            };
            relation(format!("{family} β={beta} ν={nu} K = ∂G/∂x{var} at ({x1:.3}, {x2:.3})"), k, dg, &mut checks);
            if let Some(sign) = w_sign {
                if (x1 - x2).abs() > 2.0 * h {
                    let dw = (at(Element::W, x1 + h, x2)? - at(Element::W, x1 - h, x2)?) / (2.0 * h);
                    let g = at(Element::G, x1, x2)? * sign;
                    relation(format!("{family} β={beta} ν={nu} ∂W/∂x1 at ({x1:.3}, {x2:.3})"), dw, g, &mut checks);
                }
            }
        }
    }

    checks.finish(format!(
        "antisymmetry {worst_anti:.0e}, Pf²−det {worst_pf:.0e}, min R_k {min_r:.2e}, R₂(z,z) {worst_rep:.0e}, \
         {spectra} β=1 spectra paired, relations {worst_fd:.0e}"
    ))
}

fn beta4_g_w() -> Outcome {
    let mut checks = Checks::default();
    let spec = WeightSpec::ginibre(Beta::Four, 0.3);
    let n = 8;
    let skew = skew_op_prekernel(&spec, n, &QuadControls::default()).map_err(fail)?;
    let kernel = FiniteMatrixKernel::with_prekernel(spec, n, Arc::new(move |u, v| skew.eval(u, v))).map_err(fail)?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let z1 = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let z2 = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let (ga, wa) = g_w_closed_form_beta4(&spec, n, z1, z2).map_err(fail)?;
        let (gb, wb) = g_w_from_k(&kernel, z1, z2).map_err(fail)?;
        for (label, a, b) in [("G", ga, gb), ("W", wa, wb)] {
            let d = (a - b).norm() / a.norm().max(1.0);
            worst = worst.max(d);
            checks.require(d <= 1e-8, || format!("{label}({z1}, {z2}): {a} vs {b}"));
        }
    }
    checks.finish(format!("N={n}, 5 pairs, max deviation {worst:.1e}"))
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "special-function corpus", budget: Duration::from_secs(1), run: specfun_corpus },
        Criterion { id: 2, name: "ratio vs integral kernels", budget: Duration::from_secs(5), run: dual_representations },
        Criterion { id: 3, name: "(skew-)orthogonality", budget: Duration::from_secs(120), run: orthogonality },
        Criterion { id: 4, name: "characteristic polynomials", budget: Duration::from_secs(120), run: charpoly_identities },
        Criterion { id: 5, name: "density match", budget: Duration::from_secs(180), run: density_match },
        Criterion { id: 6, name: "weak-limit convergence", budget: Duration::from_secs(180), run: weak_limits },
        Criterion { id: 7, name: "Hermitian limits", budget: Duration::from_secs(60), run: hermitian_limits },
        Criterion { id: 8, name: "structure invariants", budget: Duration::from_secs(60), run: structure_invariants },
        Criterion { id: 9, name: "β=4 G/W consistency", budget: Duration::from_secs(30), run: beta4_g_w },
    ];
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for cr in criteria.iter().filter(|cr| selected.is_empty() || selected.contains(&cr.id)) {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(cr.run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let over = elapsed > cr.budget;
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; over the {:?} budget", cr.budget)),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {} {status} [{:.2}s] {}: {detail}", cr.id, elapsed.as_secs_f64(), cr.name);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
