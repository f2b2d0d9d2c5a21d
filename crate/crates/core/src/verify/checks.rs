//! The registry: one predicate per inequality, evaluated on a shared instance.

use nalgebra::DMatrix;
use rand::Rng;

use super::context::{scaled, Ctx};
use super::instance::random_psd;
use super::margin::Probe;
use crate::error::Result;
use crate::matfun::{norm, norm_general, thompson_distance, NormKind, SpdMatrix, Symmetric};
use crate::means2::{furuta_bound, gen_kantorovich, geo_mean2, kantorovich, specht, ScalarBounds};
use crate::means_n::{invert_all, power_mean, power_mean_residual, weighted_arithmetic, weighted_harmonic, WeightVector};

pub(crate) type CheckFn = fn(&Ctx, &mut Probe) -> Result<()>;

/// Every registered check id with its predicate, in report order.
pub(crate) const REGISTRY: &[(&str, CheckFn)] = &[
    ("revAMGM_tom", rev_amgm_tom),
    ("revAMGM_map", rev_amgm_map),
    ("T21_K", t21_k),
    ("T21_S2", t21_s2),
    ("SK_scalar", sk_scalar),
    ("T22_ando", t22_ando),
    ("GK_map", gk_map),
    ("T23_sandwich", t23_sandwich),
    ("T23_power_p<1", t23_power),
    ("P1_dual", p1_dual),
    ("P2_homog", p2_homog),
    ("P3_limit", p3_limit),
    ("P4_APH", p4_aph),
    ("P5_map", p5_map),
    ("P6_trace_upper", p6_trace_upper),
    ("P6_trace_lower", p6_trace_lower),
    ("R31_trace_karcher", r31_trace_karcher),
    ("R32_trace_inv", r32_trace_inv),
    ("P32_trace_low", p32_trace_low),
    ("P32_trace_neg", p32_trace_neg),
    ("R_specht_trace", r_specht_trace),
    ("T31_a", t31_a),
    ("T31_b", t31_b),
    ("C_AKH_a", c_akh_a),
    ("C_AKH_b", c_akh_b),
    ("T32_pos", t32_pos),
    ("T32_neg", t32_neg),
    ("GK_reverse_map", gk_reverse_map),
    ("L31_norm", l31_norm),
    ("L32_norm", l32_norm),
    ("T33_p2", t33_p2),
    ("R33_p02", r33_p02),
    ("T34_alpha", t34_alpha),
    ("R34_sharp", r34_sharp),
    ("T41", t41),
    ("C41", c41),
    ("T42", t42),
    ("C42", c42),
    ("L4_genK", l4_gen_k),
    ("T43_12", t43_12),
    ("T43_2", t43_2),
    ("R43_ALM", r43_alm),
    ("T44_pq", t44_pq),
    ("L51", l51),
    ("L52", l52),
    ("T51_sandwich", t51_sandwich),
    ("T52_12", t52_12),
    ("T52_2", t52_2),
    ("L53_unitary", l53_unitary),
    ("T53_uinorm", t53_uinorm),
    ("AGH", agh),
];

const DUALITY_TOL: f64 = 1e-7;
const EQUATION_TOL: f64 = 1e-8;
const LIMIT_BOUND: f64 = 1e-2;
const LIMIT_ORDERS: [f64; 5] = [0.5, 0.25, 0.1, 0.05, 0.01];

/// `(m + M)^{2p} / (16 m^p M^p)`.
fn sixteenth(k: f64, p: f64) -> f64 {
    (4.0 * k).powf(p) / 16.0
}

/// `(k^{α/2} (M^α + m^α))^{2p/α} / (16 M^p m^p)`, evaluated in logs.
fn alpha_bound(b: ScalarBounds, alpha: f64, p: f64) -> f64 {
    let (m, big_m) = (b.m(), b.big_m());
    let k = kantorovich(b);
    let inner = 0.5 * alpha * k.ln() + (big_m.powf(alpha) + m.powf(alpha)).ln();
    (2.0 * p / alpha * inner - 16f64.ln() - p * (big_m.ln() + m.ln())).exp()
}

fn pow(x: &SpdMatrix, p: f64) -> Result<DMatrix<f64>> {
    Ok(x.powf(p)?.matrix().clone())
}

fn trace(x: &SpdMatrix) -> f64 {
    x.matrix().trace()
}

/// `(Σ w_i (tr X_i)^t)^{1/t}`.
fn trace_power_mean(w: &WeightVector, xs: &[SpdMatrix], t: f64) -> f64 {
    let s: f64 = w.as_slice().iter().zip(xs).map(|(wi, x)| wi * trace(x).powf(t)).sum();
    s.powf(1.0 / t)
}

fn rev_amgm_tom(c: &Ctx, p: &mut Probe) -> Result<()> {
    let (a1, a2, v) = (&c.ops()[0], &c.ops()[1], c.t());
    let lhs = a1.matrix() * (1.0 - v) + a2.matrix() * v;
    p.loewner(&lhs, &scaled(&geo_mean2(a1, a2, v)?, c.specht()?))
}

fn rev_amgm_map(c: &Ctx, p: &mut Probe) -> Result<()> {
    let (a1, a2, v) = (&c.ops()[0], &c.ops()[1], c.t());
    let mixed = c.phi_mat(&(a1.matrix() * (1.0 - v) + a2.matrix() * v))?;
    let left = geo_mean2(&c.phi(a1)?, &c.phi(a2)?, v)?;
    p.loewner(left.matrix(), &mixed)?;
    let right = c.phi(&geo_mean2(a1, a2, v)?)?;
    p.loewner(&mixed, &scaled(&right, c.specht()?))
}

fn t21_k(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    p.loewner(c.lawson_lim_arith(t, 1.0)?.matrix(), &scaled(&c.lawson_lim(t, 1.0)?, c.k()))
}

fn t21_s2(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    let s = c.specht()?;
    p.loewner(c.lawson_lim_arith(t, 1.0)?.matrix(), &scaled(&c.lawson_lim(t, 1.0)?, s * s))
}

fn sk_chain(p: &mut Probe, h: f64) -> Result<()> {
    let s = specht(h)?;
    let k = kantorovich(ScalarBounds::new(1.0, h)?);
    p.scalar_leq(s, k);
    p.scalar_leq(k, s * s);
    Ok(())
}

fn sk_scalar(c: &Ctx, p: &mut Probe) -> Result<()> {
    sk_chain(p, c.bounds().h())?;
    let u: f64 = 1.0 - c.rng("SK_scalar").random::<f64>();
    sk_chain(p, 100f64.powf(u))
}

fn t22_ando(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    let phi_g = c.phi(&c.lawson_lim(t, 1.0)?)?;
    let g_phi = c.lawson_lim_phi(t)?;
    p.loewner(phi_g.matrix(), g_phi.matrix())?;
    p.loewner(g_phi.matrix(), &scaled(&phi_g, c.k()))
}

fn gk_map(c: &Ctx, p: &mut Probe) -> Result<()> {
    p.loewner(c.phi(&c.karcher()?)?.matrix(), c.karcher_phi()?.matrix())
}

fn t23_sandwich(c: &Ctx, p: &mut Probe) -> Result<()> {
    let k = c.k();
    let alm = c.lawson_lim(0.5, 1.0)?;
    let gk = c.karcher_hat(0.5)?;
    p.loewner(&scaled(&gk, 1.0 / k), alm.matrix())?;
    p.loewner(alm.matrix(), &scaled(&gk, k))
}

fn t23_power(c: &Ctx, p: &mut Probe) -> Result<()> {
    let k = c.k();
    let alm = c.lawson_lim(0.5, 1.0)?;
    for q in [0.25, 0.5, 0.75] {
        p.loewner(c.lawson_lim(0.5, q)?.matrix(), &(pow(&alm, q)? * k.powf(q)))?;
    }
    Ok(())
}

fn p1_dual(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    let inverted = invert_all(c.ops())?;
    for s in [t, -t] {
        let direct = c.power(s)?;
        let dual = power_mean(c.w(), &inverted, -s, c.tol)?.0.inv()?;
        p.near_zero(thompson_distance(&direct, &dual)?, DUALITY_TOL);
    }
    let negative = c.power(-t)?;
    p.near_zero(power_mean_residual(&negative, c.w(), c.ops(), -t)?, EQUATION_TOL);
    Ok(())
}

fn p2_homog(c: &Ctx, p: &mut Probe) -> Result<()> {
    let mut rng = c.rng("P2_homog");
    let a = (10f64.ln() * (2.0 * rng.random::<f64>() - 1.0)).exp();
    let scaled_ops = c.ops().iter().map(|x| x.scale(a)).collect::<Result<Vec<_>>>()?;
    for s in [c.t(), -c.t()] {
        let lhs = power_mean(c.w(), &scaled_ops, s, c.tol)?.0;
        p.near_zero(thompson_distance(&lhs, &c.power(s)?.scale(a)?)?, EQUATION_TOL);
    }
    Ok(())
}

fn p3_limit(c: &Ctx, p: &mut Probe) -> Result<()> {
    let gk = c.karcher()?;
    let distances = LIMIT_ORDERS
        .iter()
        .map(|&s| thompson_distance(&c.power(s)?, &gk))
        .collect::<Result<Vec<_>>>()?;
    for pair in distances.windows(2) {
        p.raw(pair[0] - pair[1], 1e-9, pair[1], pair[0]);
    }
    p.scalar_leq(distances[distances.len() - 1], LIMIT_BOUND);
    Ok(())
}

fn p4_aph(c: &Ctx, p: &mut Probe) -> Result<()> {
    let (h, a) = (c.harm()?, c.arith()?);
    for s in [c.t(), -c.t()] {
        let x = c.power(s)?;
        p.loewner(h.matrix(), x.matrix())?;
        p.loewner(x.matrix(), a.matrix())?;
    }
    Ok(())
}

/// `Φ(P_s) ≤ P_s(Φ(𝔸))` for `s = ±t`. For negative orders the reversed
/// direction fails generically; see the harmonic counterexample in the tests.
fn p5_map(c: &Ctx, p: &mut Probe) -> Result<()> {
    for s in [c.t(), -c.t()] {
        p.loewner(c.phi(&c.power(s)?)?.matrix(), c.power_phi(s)?.matrix())?;
    }
    Ok(())
}

fn p6_trace_upper(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    p.scalar_leq(trace(&c.power(t)?), trace_power_mean(c.w(), c.ops(), t));
    Ok(())
}

fn p6_trace_lower(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    let bound = c.dim() as f64 / trace_power_mean(c.w(), &invert_all(c.ops())?, t);
    p.scalar_leq(bound, trace(&c.power(-t)?));
    Ok(())
}

fn r31_trace_karcher(c: &Ctx, p: &mut Probe) -> Result<()> {
    let bound: f64 = c.w().as_slice().iter().zip(c.ops()).map(|(wi, a)| trace(a).powf(*wi)).product();
    p.scalar_leq(trace(&c.karcher()?), bound);
    Ok(())
}

fn r32_trace_inv(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    let d2 = (c.dim() * c.dim()) as f64;
    let mut xs = c.ops().to_vec();
    xs.push(c.power(t)?);
    xs.push(c.karcher()?);
    for x in &xs {
        p.scalar_leq(d2 / trace(x), trace(&x.inv()?));
    }
    let bound = d2 / trace_power_mean(c.w(), &invert_all(c.ops())?, t);
    p.scalar_leq(bound, trace(&c.power(-t)?));
    Ok(())
}

fn p32_trace_low(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    let s: f64 = c.w().as_slice().iter().zip(c.ops()).map(|(wi, a)| wi * trace(a).powf(t)).sum();
    p.scalar_leq((s / c.k()).powf(1.0 / t), trace(&c.power(t)?));
    Ok(())
}

fn p32_trace_neg(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    let d2 = (c.dim() * c.dim()) as f64;
    let bound = d2 * c.k().powf(1.0 + 1.0 / t) / trace_power_mean(c.w(), &invert_all(c.ops())?, t);
    p.scalar_leq(trace(&c.power(-t)?), bound);
    Ok(())
}

fn r_specht_trace(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    let s: f64 = c.w().as_slice().iter().zip(c.ops()).map(|(wi, a)| wi * trace(a).powf(t)).sum();
    p.scalar_leq((s / c.specht()?).powf(1.0 / t), trace(&c.power(t)?));
    Ok(())
}

/// `Σ w_i Φ(A_i)` and `(Σ w_i Φ(A_i)^{-1})^{-1}`.
fn phi_arith_harm(c: &Ctx) -> Result<(SpdMatrix, SpdMatrix)> {
    let phi_ops = c.phi_ops()?;
    Ok((weighted_arithmetic(c.w(), &phi_ops)?, weighted_harmonic(c.w(), &phi_ops)?))
}

fn t31_a(c: &Ctx, p: &mut Probe) -> Result<()> {
    let (a, _) = phi_arith_harm(c)?;
    p.loewner(a.matrix(), &scaled(&c.phi(&c.power(c.t())?)?, c.k()))
}

fn t31_b(c: &Ctx, p: &mut Probe) -> Result<()> {
    let (_, h) = phi_arith_harm(c)?;
    p.loewner(c.power_phi(c.t())?.matrix(), &scaled(&h, c.k()))
}

fn c_akh_a(c: &Ctx, p: &mut Probe) -> Result<()> {
    let (a, _) = phi_arith_harm(c)?;
    p.loewner(a.matrix(), &scaled(&c.phi(&c.karcher()?)?, c.k()))
}

fn c_akh_b(c: &Ctx, p: &mut Probe) -> Result<()> {
    let (_, h) = phi_arith_harm(c)?;
    p.loewner(c.karcher_phi()?.matrix(), &scaled(&h, c.k()))
}

fn t32_pos(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    p.loewner(c.power_phi(t)?.matrix(), &scaled(&c.phi(&c.power(t)?)?, c.k()))
}

fn t32_neg(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    p.loewner(c.phi(&c.power(-t)?)?.matrix(), &scaled(&c.power_phi(-t)?, c.k()))
}

fn gk_reverse_map(c: &Ctx, p: &mut Probe) -> Result<()> {
    p.loewner(c.karcher_phi()?.matrix(), &scaled(&c.phi(&c.karcher()?)?, c.k()))
}

/// Consecutive operand pairs plus the (harmonic, arithmetic) pair.
fn norm_pairs(c: &Ctx) -> Result<Vec<(SpdMatrix, SpdMatrix)>> {
    let mut pairs: Vec<(SpdMatrix, SpdMatrix)> = c.ops().windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    pairs.push((c.harm()?, c.arith()?));
    Ok(pairs)
}

fn l31_norm(c: &Ctx, p: &mut Probe) -> Result<()> {
    for (a, b) in norm_pairs(c)? {
        let lhs = norm_general(&(a.matrix() * b.matrix()), NormKind::Operator)?;
        let sum = norm_general(&(a.matrix() + b.matrix()), NormKind::Operator)?;
        p.scalar_leq(lhs, 0.25 * sum * sum);
    }
    Ok(())
}

fn l32_norm(c: &Ctx, p: &mut Probe) -> Result<()> {
    for (a, b) in norm_pairs(c)? {
        let sum = SpdMatrix::from_computed(&(a.matrix() + b.matrix()))?;
        for r in [1.0, 1.5, 2.0, 3.0] {
            let lhs = norm_general(&(pow(&a, r)? + pow(&b, r)?), NormKind::Operator)?;
            p.scalar_leq(lhs, norm(&sum.powf(r)?, NormKind::Operator)?);
        }
    }
    Ok(())
}

/// `Φ(Σ w_i A_i)^p ≤ c · R^p` for `R` in `Φ(P_t)`, `P_t(Φ(𝔸))` and, when
/// `with_karcher`, `Φ(G_K)` and `G_K(Φ(𝔸))`.
fn map_power_family(c: &Ctx, p: &mut Probe, q: f64, bound: f64, with_karcher: bool) -> Result<()> {
    let t = c.t();
    let lhs = pow(&c.phi(&c.arith()?)?, q)?;
    let mut rights = vec![c.phi(&c.power(t)?)?, c.power_phi(t)?];
    if with_karcher {
        rights.push(c.phi(&c.karcher()?)?);
        rights.push(c.karcher_phi()?);
    }
    for r in rights {
        p.loewner(&lhs, &(pow(&r, q)? * bound))?;
    }
    Ok(())
}

fn t33_p2(c: &Ctx, p: &mut Probe) -> Result<()> {
    for q in [2.0, 3.0, 4.0] {
        map_power_family(c, p, q, sixteenth(c.k(), q), true)?;
    }
    Ok(())
}

fn r33_p02(c: &Ctx, p: &mut Probe) -> Result<()> {
    for q in [0.5, 1.0, 1.5, 2.0] {
        map_power_family(c, p, q, c.k().powf(q), true)?;
    }
    Ok(())
}

fn t34_alpha(c: &Ctx, p: &mut Probe) -> Result<()> {
    for alpha in [1.5, 2.0] {
        for q in [2.0 * alpha, 2.0 * alpha + 1.0] {
            map_power_family(c, p, q, alpha_bound(c.bounds(), alpha, q), false)?;
        }
    }
    Ok(())
}

/// `k(M² + m²) ≤ (M + m)²` exactly when `M/m ≤ 2 + √3`.
fn sharp_iff(p: &mut Probe, h: f64, tol: f64) -> Result<()> {
    let b = ScalarBounds::new(1.0, h)?;
    let lhs = kantorovich(b) * (h * h + 1.0);
    let rhs = (h + 1.0) * (h + 1.0);
    let slack = (rhs - lhs) / rhs;
    let value = if h <= 2.0 + 3f64.sqrt() { slack } else { -slack };
    p.raw(value, tol, lhs, rhs);
    Ok(())
}

fn r34_sharp(c: &Ctx, p: &mut Probe) -> Result<()> {
    let tol = c.tol.scalar_tol;
    sharp_iff(p, c.bounds().h(), tol)?;
    let h = 1.0 + 19.0 * (1.0 - c.rng("R34_sharp").random::<f64>());
    sharp_iff(p, h, tol)
}

/// `A[n,t]^q ≤ bound · G[n,t]^q`.
fn arith_geo_power(c: &Ctx, p: &mut Probe, q: f64, bound: f64) -> Result<()> {
    let t = c.t();
    let a = pow(&c.lawson_lim_arith(t, 1.0)?, q)?;
    let g = pow(&c.lawson_lim(t, 1.0)?, q)?;
    p.loewner(&a, &(g * bound))
}

fn t41(c: &Ctx, p: &mut Probe) -> Result<()> {
    for q in [2.0, 3.0, 4.0] {
        arith_geo_power(c, p, q, sixteenth(c.k(), q))?;
    }
    Ok(())
}

fn c41(c: &Ctx, p: &mut Probe) -> Result<()> {
    arith_geo_power(c, p, 2.0, c.k() * c.k())
}

fn t42(c: &Ctx, p: &mut Probe) -> Result<()> {
    for alpha in [1.5, 2.0] {
        for q in [2.0 * alpha, 2.0 * alpha + 1.0] {
            arith_geo_power(c, p, q, alpha_bound(c.bounds(), alpha, q))?;
        }
    }
    Ok(())
}

fn c42(c: &Ctx, p: &mut Probe) -> Result<()> {
    let (m, big_m, k) = (c.m(), c.big_m(), c.k());
    for q in [4.5, 6.0] {
        let bound = (k * (big_m * big_m + m * m)).powf(q) / (16.0 * (big_m * m).powf(q));
        arith_geo_power(c, p, q, bound)?;
    }
    Ok(())
}

fn l4_gen_k(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    let a = c.lawson_lim_arith(t, 1.0)?;
    for q in [1.0, 1.5, 2.0, 3.0] {
        let bound = gen_kantorovich(c.bounds(), q)?;
        p.loewner(c.lawson_lim_arith(t, q)?.matrix(), &(pow(&a, q)? * bound))?;
    }
    Ok(())
}

/// `G[n,t](𝔸^q) ≤ K(m,M,q) · c · G[n,t](𝔸)^q`.
fn geo_power(c: &Ctx, p: &mut Probe, t: f64, q: f64, factor: f64) -> Result<()> {
    let bound = gen_kantorovich(c.bounds(), q)? * factor;
    let g = c.lawson_lim(t, 1.0)?;
    p.loewner(c.lawson_lim(t, q)?.matrix(), &(pow(&g, q)? * bound))
}

fn t43_12(c: &Ctx, p: &mut Probe) -> Result<()> {
    for q in [1.5, 2.0] {
        geo_power(c, p, c.t(), q, c.k().powf(q))?;
    }
    Ok(())
}

fn t43_2(c: &Ctx, p: &mut Probe) -> Result<()> {
    for q in [2.0, 3.0] {
        geo_power(c, p, c.t(), q, sixteenth(c.k(), q))?;
    }
    Ok(())
}

fn r43_alm(c: &Ctx, p: &mut Probe) -> Result<()> {
    for q in [1.5, 2.0] {
        geo_power(c, p, 0.5, q, c.k().powf(q))?;
    }
    for q in [2.0, 3.0] {
        geo_power(c, p, 0.5, q, sixteenth(c.k(), q))?;
    }
    Ok(())
}

fn t44_pq(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    for (hi, lo) in [(2.0, 1.5), (2.0, 1.0), (4.0, 1.0), (3.0, 1.5)] {
        let r: f64 = hi / lo;
        let bq = c.bounds().powf(lo)?;
        let kq = kantorovich(bq);
        let gk = gen_kantorovich(bq, r)?.powf(1.0 / hi);
        let lhs = pow(&c.lawson_lim(t, hi)?, 1.0 / hi)?;
        let base = pow(&c.lawson_lim(t, lo)?, 1.0 / lo)?;
        if r > 1.0 && r <= 2.0 {
            p.loewner(&lhs, &(&base * (gk * kq.powf(1.0 / lo))))?;
        }
        if r >= 2.0 {
            let bound = 4f64.powf(-2.0 / hi) * gk * (4.0 * kq).powf(1.0 / lo);
            p.loewner(&lhs, &(&base * bound))?;
        }
    }
    Ok(())
}

/// Pairs `A ≤ B` with `m ≤ A ≤ M`: (harmonic, arithmetic) and `(A_1, A_1 + P)`.
fn ordered_pairs(c: &Ctx, id: &str) -> Result<Vec<(SpdMatrix, SpdMatrix)>> {
    let mut rng = c.rng(id);
    let a1 = c.ops()[0].clone();
    let bump = random_psd(c.dim(), c.big_m(), &mut rng);
    let b1 = SpdMatrix::from_computed(&(a1.matrix() + bump))?;
    Ok(vec![(c.harm()?, c.arith()?), (a1, b1)])
}

fn l51(c: &Ctx, p: &mut Probe) -> Result<()> {
    for (a, b) in ordered_pairs(c, "L51")? {
        p.loewner(&pow(&a, 2.0)?, &(pow(&b, 2.0)? * c.k()))?;
    }
    Ok(())
}

fn l52(c: &Ctx, p: &mut Probe) -> Result<()> {
    for (a, b) in ordered_pairs(c, "L52")? {
        for q in [1.5, 2.0, 3.0] {
            let k = gen_kantorovich(c.bounds(), q)?;
            p.loewner(&pow(&a, q)?, &(pow(&b, q)? * k))?;
            p.scalar_leq(k, furuta_bound(c.bounds(), q));
        }
    }
    Ok(())
}

fn t51_sandwich(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    let k3 = c.k().powi(3);
    let g2 = pow(&c.lawson_lim(t, 1.0)?, 2.0)?;
    let gk2 = pow(&c.karcher_hat(t)?, 2.0)?;
    p.loewner(&(&g2 / k3), &gk2)?;
    p.loewner(&gk2, &(g2 * k3))
}

/// `G_K(ω̂)^q ≤ K(m,M,q) · factor · G[n,t]^q`.
fn karcher_geo_power(c: &Ctx, p: &mut Probe, q: f64, factor: f64) -> Result<()> {
    let t = c.t();
    let bound = gen_kantorovich(c.bounds(), q)? * factor;
    let g = pow(&c.lawson_lim(t, 1.0)?, q)?;
    p.loewner(&pow(&c.karcher_hat(t)?, q)?, &(g * bound))
}

fn t52_12(c: &Ctx, p: &mut Probe) -> Result<()> {
    for q in [1.0, 1.5, 2.0] {
        karcher_geo_power(c, p, q, c.k().powf(q))?;
    }
    Ok(())
}

fn t52_2(c: &Ctx, p: &mut Probe) -> Result<()> {
    for q in [2.0, 3.0, 4.0] {
        karcher_geo_power(c, p, q, sixteenth(c.k(), q))?;
    }
    Ok(())
}

fn l53_unitary(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    let a = c.lawson_lim_arith(t, 1.0)?;
    let b = c.lawson_lim(t, 1.0)?.scale(c.k())?;
    let mut hypothesis = Probe::new(c.tol);
    hypothesis.loewner(a.matrix(), b.matrix())?;
    if !hypothesis.margins.iter().all(|m| m.holds()) {
        p.mark_inconclusive("hypothesis A ≤ B does not hold numerically");
        return Ok(());
    }
    // Both spectra are ascending, so U maps the k-th eigenvector of B to the k-th of A.
    let u = &a.spectrum().vectors * b.spectrum().vectors.transpose();
    let mut certificate = Probe::new(c.tol);
    for q in [0.5, 1.0, 2.0, 3.0] {
        let rotated = &u * pow(&b, q)? * u.transpose();
        certificate.loewner(&pow(&a, q)?, &rotated)?;
    }
    if !certificate.margins.iter().all(|m| m.holds()) {
        p.mark_inconclusive("constructed orthogonal U does not certify A^p ≤ U B^p Uᵀ");
    }
    p.margins.extend(certificate.margins);
    Ok(())
}

fn t53_uinorm(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    let d = c.dim();
    let g = c.lawson_lim(t, 1.0)?;
    let gk = c.karcher_hat(t)?;
    let mut kinds = vec![NormKind::Trace, NormKind::Frobenius, NormKind::Operator, NormKind::Schatten(3.0)];
    kinds.extend((1..=d).map(NormKind::KyFan));
    for q in [1.0, 1.5, 2.0, 3.0] {
        let bound = gen_kantorovich(c.bounds(), q)? * c.k().powf(q);
        let (gq, gkq) = (g.powf(q)?, gk.powf(q)?);
        for kind in &kinds {
            p.scalar_leq(norm(&gkq, *kind)?, bound * norm(&gq, *kind)?);
        }
    }
    Ok(())
}

fn agh(c: &Ctx, p: &mut Probe) -> Result<()> {
    let t = c.t();
    let g = c.lawson_lim(t, 1.0)?;
    p.loewner(c.lawson_lim_harm(t)?.matrix(), g.matrix())?;
    p.loewner(g.matrix(), c.lawson_lim_arith(t, 1.0)?.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{build_map, MapSpec};
    use crate::matfun::loewner_leq;
    use crate::tolerance::ToleranceConfig;

    #[test]
    fn negative_order_map_inequality_points_the_same_way() {
        // Order -1 is the harmonic mean; with the normalized trace the two
        // sides are scalars and Φ(H) < H(Φ(𝔸)) strictly.
        let tol = ToleranceConfig::default();
        let ops = [
            SpdMatrix::from_diagonal(&[1.0, 4.0]).unwrap(),
            SpdMatrix::from_diagonal(&[4.0, 1.0]).unwrap(),
        ];
        let w = WeightVector::uniform(2);
        let phi = build_map(MapSpec::NormalizedTrace { dim: 2 }).unwrap();
        let phi_h = phi.apply_spd(&power_mean(&w, &ops, -1.0, &tol).unwrap().0).unwrap();
        let h_phi = power_mean(&w, &phi.apply_all(&ops).unwrap(), -1.0, &tol).unwrap().0;
        assert!((phi_h.matrix()[(0, 0)] - 1.6).abs() < 1e-12);
        assert!((h_phi.matrix()[(0, 0)] - 2.5).abs() < 1e-12);
        assert!(loewner_leq(&phi_h, &h_phi, tol.margin_tol).unwrap().holds);
        assert!(!loewner_leq(&h_phi, &phi_h, tol.margin_tol).unwrap().holds);
    }

    #[test]
    fn sharp_iff_switches_at_the_threshold() {
        let tol = ToleranceConfig::default();
        for h in [1.0, 2.0, 3.5, 2.0 + 3f64.sqrt(), 2.0 + 3f64.sqrt() + 0.01, 10.0] {
            let mut p = Probe::new(&tol);
            sharp_iff(&mut p, h, 1e-12).unwrap();
            assert!(p.margins[0].holds(), "h = {h}");
        }
    }

    #[test]
    fn alpha_bound_matches_direct_formula() {
        let b = ScalarBounds::new(0.5, 4.0).unwrap();
        let (m, big_m, k) = (0.5f64, 4.0f64, kantorovich(b));
        for (alpha, p) in [(1.5, 3.0), (2.0, 5.0)] {
            let direct = (k.powf(alpha / 2.0) * (big_m.powf(alpha) + m.powf(alpha))).powf(2.0 * p / alpha)
                / (16.0 * big_m.powf(p) * m.powf(p));
            assert!((alpha_bound(b, alpha, p) / direct - 1.0).abs() < 1e-12);
        }
    }
}
