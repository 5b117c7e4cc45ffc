//! Hermitian and skew-hermitian forms over quaternion algebras.
//!
//! Hermitian forms become (a, b, t₁, …, t_{n−1}) with h ≃ ⟨1, t₁, …⟩.
//! Skew-hermitian forms ⟨p, q, r₁, …, r_{n−2}⟩ become (a, b, c, t…) with
//! a = p², b = (q − cp)² and r_k = t·p + t·(q − cp) + t·p(q − cp).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{parse_sign, sign_text, Category, Certificate, Encoded, Quat, Witness};
use crate::error::{Error, Result};
use crate::field::rational_sqrt;
use crate::forms::{diagonalize_form, disc_skew, matrix_units, Epsilon, HermitianForm, QuatMatrix};
use crate::quaternion::QuaternionAlgebra;
use crate::rat::Rat;

/// Largest rank for which the certificate compares adjoint involutions on
/// every matrix unit.
pub const ADJOINT_CHECK_MAX_N: usize = 3;

const RANDOM_REPAIRS: usize = 64;

fn require(h: &HermitianForm, epsilon: Epsilon) -> Result<()> {
    if h.epsilon() != epsilon {
        return Err(Error::ShapeMismatch(format!("expected an ε = {epsilon} form, got ε = {}", h.epsilon())));
    }
    if h.n() < 3 {
        return Err(Error::ShapeMismatch(format!("rank {} is below 3", h.n())));
    }
    Ok(())
}

fn fmt_entries(entries: &[Quat]) -> String {
    let items: Vec<String> = entries.iter().map(|x| x.to_string()).collect();
    format!("⟨{}⟩", items.join(", "))
}

fn check_congruence(cert: &mut Certificate, h: &HermitianForm, diag: &HermitianForm, p: &QuatMatrix) {
    let image = h.gram().congruent(h.algebra(), p);
    let lhs = if image.is_diagonal() { fmt_entries(&image.diagonal_entries()) } else { "non-diagonal".into() };
    let rhs = fmt_entries(&diag.gram().diagonal_entries());
    cert.push("congruence", lhs, rhs, &image == diag.gram());
}

/// σ_new(m) = P⁻¹·σ_h(P·m·P⁻¹)·P on every matrix unit, for small ranks.
fn check_adjoint_action(cert: &mut Certificate, h: &HermitianForm, new: &HermitianForm, p: &QuatMatrix) -> Result<()> {
    if h.n() > ADJOINT_CHECK_MAX_N {
        return Ok(());
    }
    let q = h.algebra();
    let p_inv = p.inverse(q)?;
    let (old_sigma, new_sigma) = (h.adjoint(), new.adjoint());
    let units = matrix_units(q, h.n());
    let mut agree = 0;
    for m in &units {
        let lhs = p.mul(q, &new_sigma.apply(m)?).mul(q, &p_inv);
        let rhs = old_sigma.apply(&p.mul(q, m).mul(q, &p_inv))?;
        agree += usize::from(lhs == rhs);
    }
    cert.push("adjoint_action", agree, units.len(), agree == units.len());
    Ok(())
}

/// (a, b, t₁, …, t_{n−1}) with h ≃ ⟨1, t₁, …, t_{n−1}⟩ over (a, b).
pub fn encode_hermitian(h: &HermitianForm, seed: u64) -> Result<Encoded> {
    require(h, Epsilon::Plus)?;
    let q = h.algebra();
    let d = diagonalize_form(h, seed)?;
    let entries = d.form.gram().diagonal_entries();
    let mut cert = Certificate::new(seed);
    check_congruence(&mut cert, h, &d.form, &d.p);
    let rational = entries.iter().all(|x| x.is_scalar());
    cert.push("entries_rational", fmt_entries(&entries), "scalars", rational);
    let t: Vec<Rat> = entries.iter().map(|x| x.c[0].clone()).collect();
    // diagonal entries of a nondegenerate form are invertible
    let lambda = t[0].inv();
    let mut params = vec![q.a().clone(), q.b().clone()];
    params.extend(t[1..].iter().map(|x| x * &lambda));
    let normal = d.form.scale(&lambda);
    cert.push_eq("first_entry", &normal.gram().get(0, 0).c[0], &Rat::one());
    check_adjoint_action(&mut cert, h, &normal, &d.p)?;
    let mut witness = Witness::new(Category::QhPlus, h.n(), params);
    if let Some(s) = d.seed_used {
        witness = witness.with_meta("repair_seed", s);
    }
    Ok(Encoded { witness, certificate: cert.into_result()? })
}

pub(crate) fn decode_hermitian(w: &Witness) -> Result<HermitianForm> {
    let q = witness_algebra(&w.params[0], &w.params[1])?;
    let mut entries = vec![Quat::scalar(Rat::one())];
    for t in &w.params[2..] {
        if t.is_zero() {
            return Err(Error::WitnessInvalid("a diagonal entry t is zero".into()));
        }
        entries.push(Quat::scalar(t.clone()));
    }
    HermitianForm::diagonal(q, Epsilon::Plus, &entries)
}

fn witness_algebra(a: &Rat, b: &Rat) -> Result<QuaternionAlgebra> {
    QuaternionAlgebra::new(a.clone(), b.clone()).map_err(|_| Error::WitnessInvalid(format!("({a}, {b}) has a zero slot")))
}

/// A diagonal skew-hermitian form ⟨p, q, r₁, …⟩ together with the data of the
/// presentation Q ≅ (p², q′²), q′ = q − cp.
#[derive(Clone, Debug)]
struct SkewData {
    diag: HermitianForm,
    change: QuatMatrix,
    p: Quat,
    q: Quat,
    qp: Quat,
    c: Rat,
    a: Rat,
    b: Rat,
    t: Vec<Rat>,
    repair: &'static str,
}

impl SkewData {
    fn r(&self) -> Vec<Quat> {
        self.diag.gram().diagonal_entries()[2..].to_vec()
    }

    /// The same presentation for λ·h: p, q′, r scale by λ, so the coefficient
    /// of p·q′ scales by 1/λ.
    fn scaled(&self, lambda: &Rat) -> SkewData {
        let mut t = self.t.clone();
        for chunk in t.chunks_mut(3) {
            chunk[2] = &chunk[2] / lambda;
        }
        let l2 = lambda.square();
        SkewData {
            diag: self.diag.scale(lambda),
            change: self.change.clone(),
            p: self.p.scale_rat(lambda),
            q: self.q.scale_rat(lambda),
            qp: self.qp.scale_rat(lambda),
            c: self.c.clone(),
            a: &self.a * &l2,
            b: &self.b * &l2,
            t,
            repair: self.repair,
        }
    }

    fn params(&self) -> Vec<Rat> {
        let mut v = vec![self.a.clone(), self.b.clone(), self.c.clone()];
        v.extend(self.t.iter().cloned());
        v
    }

    /// Certificate checks against `h`, which must satisfy γ(P)ᵀ·h·P = diag.
    fn check(&self, cert: &mut Certificate, h: &HermitianForm) -> Result<()> {
        let q = h.algebra();
        check_congruence(cert, h, &self.diag, &self.change);
        let entries = self.diag.gram().diagonal_entries();
        cert.push("entries_pure", fmt_entries(&entries), "pure", entries.iter().all(|x| x.is_pure()));
        let anti = &q.mul(&self.p, &self.qp) + &q.mul(&self.qp, &self.p);
        cert.push_eq("anticommutation", &anti, &Quat::scalar(Rat::zero()));
        let pq = q.mul(&self.p, &self.qp);
        for (k, (r, t)) in self.r().iter().zip(self.t.chunks(3)).enumerate() {
            let back = &(&self.p.scale_rat(&t[0]) + &self.qp.scale_rat(&t[1])) + &pq.scale_rat(&t[2]);
            cert.push_eq(&format!("rebase_r{}", k + 1), &back, r);
        }
        let ram_q = q.ramification_set()?;
        let ram_w = crate::quaternion::ramification_set(&self.a, &self.b)?;
        cert.push_eq("quaternion_isomorphic", &ram_q, &ram_w);
        // ψ: i ↦ p, j ↦ q′ carries the decoded form onto the diagonal one
        let decoded = skew_entries(&self.a, &self.b, &self.c, &self.t)?;
        let psi = |x: &Quat| {
            let mut out = Quat::scalar(x.c[0].clone());
            out = &out + &self.p.scale_rat(&x.c[1]);
            out = &out + &self.qp.scale_rat(&x.c[2]);
            &out + &pq.scale_rat(&x.c[3])
        };
        let image: Vec<Quat> = decoded.iter().map(psi).collect();
        cert.push("presentation", fmt_entries(&image), fmt_entries(&entries), image == entries);
        check_adjoint_action(cert, h, &self.diag, &self.change)
    }
}

/// The entries i, ci + j, r_k of the decoded form over (a, b), after checking
/// the inequations of the variety.
fn skew_entries(a: &Rat, b: &Rat, c: &Rat, t: &[Rat]) -> Result<Vec<Quat>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::WitnessInvalid(format!("({a}, {b}) has a zero slot")));
    }
    if (a * &c.square() + b).is_zero() {
        return Err(Error::WitnessInvalid("ac² + b = 0".into()));
    }
    let mut out = vec![Quat::new([Rat::zero(), Rat::one(), Rat::zero(), Rat::zero()])];
    out.push(Quat::new([Rat::zero(), c.clone(), Rat::one(), Rat::zero()]));
    for (k, chunk) in t.chunks(3).enumerate() {
        if trinomial(a, b, chunk).is_zero() {
            return Err(Error::WitnessInvalid(format!("a t² + b t² − ab t² vanishes for r{}", k + 1)));
        }
        out.push(Quat::new([Rat::zero(), chunk[0].clone(), chunk[1].clone(), chunk[2].clone()]));
    }
    Ok(out)
}

/// a t₁² + b t₂² − ab t₃², the square of t₁i + t₂j + t₃ij in (a, b).
fn trinomial(a: &Rat, b: &Rat, t: &[Rat]) -> Rat {
    a * &t[0].square() + b * &t[1].square() - &(a * b) * &t[2].square()
}

fn permutation(order: &[usize]) -> QuatMatrix {
    let n = order.len();
    let mut m = QuatMatrix::zeros(n);
    for (j, &src) in order.iter().enumerate() {
        m.set(src, j, Quat::scalar(Rat::one()));
    }
    m
}

/// Chooses p and q among the diagonal entries so that p is anisotropic, q is
/// independent of p and q − cp is anisotropic; moves them to the front.
fn present(diag: &HermitianForm, change: &QuatMatrix, repair: &'static str) -> Result<SkewData> {
    let q = diag.algebra();
    let e = diag.gram().diagonal_entries();
    let n = e.len();
    let mut first_err = None;
    for i in 0..n {
        for l in (0..n).filter(|&l| l != i) {
            let shifted = q.anticommutation_shift(&e[i], &e[l]).and_then(|c| {
                let qp = &e[l] - &e[i].scale_rat(&c);
                if q.nrd(&qp).is_zero() {
                    Err(Error::IsotropicEntry(format!("{} − ({c})·{} is isotropic", e[l], e[i])))
                } else {
                    Ok((c, qp))
                }
            });
            let (c, qp) = match shifted {
                Ok(v) => v,
                Err(err) => {
                    first_err.get_or_insert(err);
                    continue;
                }
            };
            let order: Vec<usize> = [i, l].into_iter().chain((0..n).filter(|&x| x != i && x != l)).collect();
            let perm = permutation(&order);
            let moved = diag.transform(&perm)?;
            let change = change.mul(q, &perm);
            let entries = moved.gram().diagonal_entries();
            let (p, qq) = (entries[0].clone(), entries[1].clone());
            let mut t = Vec::with_capacity(3 * (n - 2));
            for r in &entries[2..] {
                let (t1, t2, t3) = q.rebase_pure(r, &p, &qp)?;
                t.extend([t1, t2, t3]);
            }
            let repair = if repair == "none" && (i, l) != (0, 1) { "permutation" } else { repair };
            return Ok(SkewData {
                a: q.pure_square(&p),
                b: q.pure_square(&qp),
                diag: moved,
                change,
                p,
                q: qq,
                qp,
                c,
                t,
                repair,
            });
        }
    }
    Err(first_err.expect("rank ≥ 2 gives at least one pair"))
}

fn small_lambdas() -> Vec<Quat> {
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, 0], [1, 0, 1, 0]]
        .into_iter()
        .map(Quat::from_ints)
        .collect()
}

/// Re-diagonalizes after the congruence e_k ← e_k + e_l·λ.
fn try_congruence(
    diag: &HermitianForm,
    change: &QuatMatrix,
    k: usize,
    l: usize,
    lambda: &Quat,
    seed: u64,
    repair: &'static str,
) -> Result<SkewData> {
    let q = diag.algebra();
    let mut e = QuatMatrix::identity(diag.n());
    e.set(l, k, lambda.clone());
    let moved = diag.transform(&e)?;
    let d = diagonalize_form(&moved, seed)?;
    let total = change.mul(q, &e).mul(q, &d.p);
    present(&d.form, &total, repair)
}

/// The presentation of a skew-hermitian form, with the repair policy:
/// permutation, then small deterministic congruences, then seeded random
/// congruences.
fn skew_presentation(h: &HermitianForm, seed: u64) -> Result<SkewData> {
    let d = diagonalize_form(h, seed)?;
    let err = match present(&d.form, &d.p, "none") {
        Ok(s) => return Ok(s),
        Err(e @ (Error::LinearlyDependent(_) | Error::IsotropicEntry(_))) => e,
        Err(e) => return Err(e),
    };
    let n = h.n();
    for k in 0..n {
        for l in (0..n).filter(|&l| l != k) {
            for lambda in small_lambdas() {
                if let Ok(s) = try_congruence(&d.form, &d.p, k, l, &lambda, seed, "congruence") {
                    return Ok(s);
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_REPAIRS {
        let k = rng.gen_range(0..n);
        let l = (k + rng.gen_range(1..n)) % n;
        let lambda = Quat::from_ints(std::array::from_fn(|_| rng.gen_range(-4..=4)));
        if lambda.is_zero() {
            continue;
        }
        if let Ok(s) = try_congruence(&d.form, &d.p, k, l, &lambda, seed, "random") {
            return Ok(s);
        }
    }
    Err(match err {
        Error::LinearlyDependent(m) => Error::LinearlyDependent(format!("{m}; repair exhausted with seed {seed}")),
        Error::IsotropicEntry(m) => Error::IsotropicEntry(format!("{m}; repair exhausted with seed {seed}")),
        other => other,
    })
}

fn witness_meta(mut w: Witness, s: &SkewData) -> Witness {
    if s.repair != "none" {
        w = w.with_meta("repair", s.repair);
    }
    w
}

/// (a, b, c, t₁, …, t_{3n−6}) for a skew-hermitian form.
pub fn encode_skew(h: &HermitianForm, seed: u64) -> Result<Encoded> {
    require(h, Epsilon::Minus)?;
    let s = skew_presentation(h, seed)?;
    let mut cert = Certificate::new(seed);
    s.check(&mut cert, h)?;
    let witness = witness_meta(Witness::new(Category::QhMinus, h.n(), s.params()), &s);
    Ok(Encoded { witness, certificate: cert.into_result()? })
}

pub(crate) fn decode_skew(w: &Witness) -> Result<HermitianForm> {
    let p = &w.params;
    let entries = skew_entries(&p[0], &p[1], &p[2], &p[3..])?;
    HermitianForm::diagonal(witness_algebra(&p[0], &p[1])?, Epsilon::Minus, &entries)
}

/// Both sides of −p²q²r₁²⋯r_{m−1}² = ∏_{k≥m} r_k² up to the square to be
/// extracted: returns (LHS, R) for entries p, q, r₁, …, r_{n−2}, n = 2m + 1.
fn disc_sides(q: &QuaternionAlgebra, entries: &[Quat]) -> Result<(Rat, Rat)> {
    let n = entries.len();
    if n < 3 || n % 2 == 0 || entries.iter().any(|x| !x.is_pure()) {
        return Err(Error::ShapeMismatch("the discriminant equation needs an odd number ≥ 3 of pure entries".into()));
    }
    let m = (n - 1) / 2;
    let sq: Vec<Rat> = entries.iter().map(|x| q.pure_square(x)).collect();
    let lhs = -(&sq[0] * &sq[1]) * sq[2..m + 1].iter().cloned().product::<Rat>();
    let rhs: Rat = sq[m + 1..].iter().cloned().product();
    Ok((lhs, rhs))
}

/// The d ≥ 0 with −p²q²r₁²⋯r_{m−1}² = (d/R)²·R, R = r_m²⋯r_{n−2}², if it exists.
pub fn disc_equation_root(q: &QuaternionAlgebra, entries: &[Quat]) -> Result<Option<Rat>> {
    let (lhs, r) = disc_sides(q, entries)?;
    if r.is_zero() || lhs.is_zero() {
        return Err(Error::IsotropicEntry("an entry squares to zero".into()));
    }
    Ok(rational_sqrt(&(&lhs * &r)))
}

/// (a, b, c, t₁, …, t_{3n−7}) for a skew-hermitian form of odd rank with
/// trivial discriminant; t_{3n−6} is fixed by the variety's relation up to
/// the sign recorded in `meta.t_last_sign`.
pub fn encode_skew_trivial_disc(h: &HermitianForm, seed: u64) -> Result<Encoded> {
    require(h, Epsilon::Minus)?;
    if h.n() % 2 == 0 {
        return Err(Error::ShapeMismatch(format!("rank {} is even", h.n())));
    }
    let s = skew_presentation(h, seed)?;
    let class = disc_skew(&s.diag)?;
    if !class.is_trivial() {
        return Err(Error::DiscNotTrivial(class.to_string()));
    }
    let q = h.algebra();
    let entries = s.diag.gram().diagonal_entries();
    let (lhs, r) = disc_sides(q, &entries)?;
    let d = rational_sqrt(&(&lhs * &r)).ok_or_else(|| Error::CertificateFailed("trivial class without a square root".into()))?;
    let mut f = &d / &r;
    // fix the sign of f so that the rescaled p has a positive leading coordinate
    let lead = s.p.c.iter().find(|x| !x.is_zero()).expect("p is nonzero");
    if lead.signum() != f.signum() {
        f = -f;
    }
    let lambda = f.inv();
    let scaled = s.scaled(&lambda);
    let hs = h.scale(&lambda);

    let mut cert = Certificate::new(seed);
    cert.push_eq("disc_trivial", &class.to_string(), &"1".to_string());
    cert.push_eq("displayed_equation", &lhs, &(&f.square() * &r));
    scaled.check(&mut cert, &hs)?;
    let params = scaled.params();
    let (rel_lhs, rel_rhs) = relation_sides(&params, h.n())?;
    cert.push_eq("relation", &rel_lhs, &rel_rhs);
    let last = params.last().expect("n ≥ 3").clone();
    let kept = params[..params.len() - 1].to_vec();
    let recovered = recover_last(&kept, h.n(), sign_of(&last))?;
    cert.push_eq("recovered_t_last", &recovered, &last);
    cert.push("scale", "f", &f, true);
    let witness = witness_meta(Witness::new(Category::QhMinusDisc1, h.n(), kept), &scaled).with_meta("t_last_sign", sign_text(&last));
    Ok(Encoded { witness, certificate: cert.into_result()? })
}

fn sign_of(r: &Rat) -> i32 {
    r.signum()
}

/// −a(ac² + b)∏_{k<m} N_k and ∏_{k≥m} N_k for a full QH− parameter list.
fn relation_sides(params: &[Rat], n: usize) -> Result<(Rat, Rat)> {
    let (a, b, c) = (&params[0], &params[1], &params[2]);
    let m = (n - 1) / 2;
    let norms: Vec<Rat> = params[3..].chunks(3).map(|t| trinomial(a, b, t)).collect();
    let lhs = -(a * &(a * &c.square() + b)) * norms[..m - 1].iter().cloned().product::<Rat>();
    let rhs = norms[m - 1..].iter().cloned().product();
    Ok((lhs, rhs))
}

/// Solves the relation for the last coordinate.
fn recover_last(kept: &[Rat], n: usize, sign: i32) -> Result<Rat> {
    let (a, b, c) = (&kept[0], &kept[1], &kept[2]);
    if a.is_zero() || b.is_zero() {
        return Err(Error::WitnessInvalid(format!("({a}, {b}) has a zero slot")));
    }
    let m = (n - 1) / 2;
    let t = &kept[3..];
    let full: Vec<Rat> = t.chunks(3).filter(|ch| ch.len() == 3).map(|ch| trinomial(a, b, ch)).collect();
    let lhs = -(a * &(a * &c.square() + b)) * full[..m - 1].iter().cloned().product::<Rat>();
    let middle: Rat = full[m - 1..].iter().cloned().product();
    if middle.is_zero() {
        return Err(Error::WitnessInvalid("a t² + b t² − ab t² vanishes".into()));
    }
    let target = lhs / middle;
    let (t1, t2) = (&t[t.len() - 2], &t[t.len() - 1]);
    let t3_sq = (a * &t1.square() + b * &t2.square() - &target) / (a * b);
    let root = rational_sqrt(&t3_sq)
        .ok_or_else(|| Error::WitnessInvalid(format!("the relation needs t² = {t3_sq}, which is not a square")))?;
    match (sign, root.is_zero()) {
        (0, true) => Ok(root),
        (0, false) | (_, true) => Err(Error::WitnessInvalid("t_last_sign disagrees with the relation".into())),
        (1, false) => Ok(root),
        _ => Ok(-root),
    }
}

pub(crate) fn decode_skew_trivial_disc(w: &Witness) -> Result<HermitianForm> {
    let sign = parse_sign(w.meta("t_last_sign"), "t_last_sign")?;
    let last = recover_last(&w.params, w.n, sign)?;
    let mut params = w.params.clone();
    params.push(last);
    let entries = skew_entries(&params[0], &params[1], &params[2], &params[3..])?;
    HermitianForm::diagonal(witness_algebra(&params[0], &params[1])?, Epsilon::Minus, &entries)
}
