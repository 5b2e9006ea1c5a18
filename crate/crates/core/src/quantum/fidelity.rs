use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{gates, DensityMatrix, PureState};
use crate::{Error, Result, NUMERIC_TOL};

/// Eigenvalues at or below this are treated as numerically zero when taking
/// matrix square roots. Eigensolver noise for unit-trace 8×8 matrices sits
/// around 1e-16; a surviving noise eigenvalue would contribute its square
/// root (~1e-8) to the fidelity.
const RANK_TOL: f64 = 1e-14;

/// A branch probability at or below this is reported as absent.
const ABSENT_BRANCH: f64 = 1e-14;

/// Uhlmann fidelity `F(ρ, σ) = (tr √(√ρ σ √ρ))²`.
///
/// The square root is taken on whichever argument has the lower numerical
/// rank, restricted to its support, which keeps pure-state inputs exact.
pub fn state_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: sigma.dim() });
    }
    for s in [rho, sigma] {
        s.validate(NUMERIC_TOL)?;
        let tr = s.trace();
        if (tr - 1.0).abs() > NUMERIC_TOL {
            return Err(Error::NotUnitTrace(tr));
        }
    }
    let (vals_r, vecs_r) = support(rho);
    let (vals_s, vecs_s) = support(sigma);
    let (vals, vecs, other) = if vals_s.len() < vals_r.len() { (vals_s, vecs_s, rho) } else { (vals_r, vecs_r, sigma) };
    let r = vals.len();
    if r == 0 {
        return Ok(0.0);
    }
    // N = √Λ V† σ V √Λ on the support of the outer state
    let projected = vecs.adjoint() * other.matrix() * &vecs;
    let n = DMatrix::from_fn(r, r, |k, l| projected[(k, l)] * (vals[k] * vals[l]).sqrt());
    let herm = (&n + n.adjoint()).unscale(2.0);
    let root_sum: f64 = herm.symmetric_eigenvalues().iter().filter(|&&mu| mu > RANK_TOL).map(|mu| mu.sqrt()).sum();
    Ok(root_sum * root_sum)
}

/// Eigenpairs of the Hermitian part with eigenvalue above `RANK_TOL`.
fn support(rho: &DensityMatrix) -> (Vec<f64>, DMatrix<Complex64>) {
    let herm = (rho.matrix() + rho.matrix().adjoint()).unscale(2.0);
    let eig = herm.symmetric_eigen();
    let keep: Vec<usize> = (0..eig.eigenvalues.len()).filter(|&i| eig.eigenvalues[i] > RANK_TOL).collect();
    let vals = keep.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vecs = DMatrix::from_fn(rho.dim(), keep.len(), |row, k| eig.eigenvectors[(row, keep[k])]);
    (vals, vecs)
}

/// One parity component of a two-qubit state.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub probability: f64,
    pub state: PureState,
}

/// Even and odd parity components `P_even|ψ⟩`, `P_odd|ψ⟩` of a two-qubit
/// state. A component of zero weight is `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParitySplit {
    pub even: Option<Branch>,
    pub odd: Option<Branch>,
}

impl ParitySplit {
    pub fn p_even(&self) -> f64 {
        self.even.as_ref().map_or(0.0, |b| b.probability)
    }

    pub fn p_odd(&self) -> f64 {
        self.odd.as_ref().map_or(0.0, |b| b.probability)
    }

    /// Output of a perfect parity projection, `Σ_b p_b |ψ_b⟩⟨ψ_b|`.
    pub fn ideal_output(&self) -> DensityMatrix {
        let mut rho = DensityMatrix::zeros(4);
        for b in [&self.even, &self.odd].into_iter().flatten() {
            rho.add_scaled(&b.state.outer(), b.probability);
        }
        rho
    }
}

pub fn parity_split(psi: &PureState) -> Result<ParitySplit> {
    if psi.dim() != 4 {
        return Err(Error::DimensionMismatch { left: 4, right: psi.dim() });
    }
    let branch = |projector: &crate::Operator| -> Result<Option<Branch>> {
        let v = projector.apply_vec(psi.amplitudes())?;
        let p = v.norm_squared();
        if p <= ABSENT_BRANCH {
            Ok(None)
        } else {
            Ok(Some(Branch { probability: p, state: PureState::normalize(v)? }))
        }
    };
    Ok(ParitySplit { even: branch(&gates::p_even())?, odd: branch(&gates::p_odd())? })
}

/// Fidelity between the perfect parity-projection output of `split` and
/// `rho_out`, using the rank-two structure of the ideal state:
///
/// `F = ⟨⟩_ee + ⟨⟩_oo + 2 √(⟨⟩_ee ⟨⟩_oo − |⟨⟩_eo|²)`,
/// with `⟨⟩_ij = √(p_i p_j) ⟨ψ_i|ρ_out|ψ_j⟩`.
pub fn rank2_fidelity(split: &ParitySplit, rho_out: &DensityMatrix) -> Result<f64> {
    let total = split.p_even() + split.p_odd();
    if (total - 1.0).abs() > NUMERIC_TOL {
        return Err(Error::BranchProbabilities(total));
    }
    if rho_out.dim() != 4 {
        return Err(Error::DimensionMismatch { left: 4, right: rho_out.dim() });
    }
    let diag = |b: &Option<Branch>| b.as_ref().map_or(0.0, |b| b.probability * rho_out.expectation(&b.state));
    let ee = diag(&split.even);
    let oo = diag(&split.odd);
    let eo = match (&split.even, &split.odd) {
        (Some(e), Some(o)) => {
            (e.probability * o.probability).sqrt() * rho_out.matrix_element(&e.state, &o.state).norm()
        }
        _ => 0.0,
    };
    let mut disc = ee * oo - eo * eo;
    if disc < -1e-12 {
        return Err(Error::NegativeDiscriminant(disc));
    }
    disc = disc.max(0.0);
    Ok(ee + oo + 2.0 * disc.sqrt())
}

/// [`rank2_fidelity`] for an output given as an ensemble of unnormalized
/// pure states, `ρ_out = Σ_t |u_t⟩⟨u_t|`.
///
/// With `a_t = (⟨ψ|P_even|u_t⟩, ⟨ψ|P_odd|u_t⟩)` the discriminant is the sum
/// of squared 2×2 minors `Σ_{s<t} |a_s × a_t|²`, which is non-negative term
/// by term and stays accurate when the output is close to pure.
pub fn rank2_fidelity_ensemble(psi: &PureState, outputs: &[DVector<Complex64>]) -> Result<f64> {
    if psi.dim() != 4 {
        return Err(Error::DimensionMismatch { left: 4, right: psi.dim() });
    }
    if let Some(u) = outputs.iter().find(|u| u.len() != 4) {
        return Err(Error::DimensionMismatch { left: 4, right: u.len() });
    }
    let total: f64 = outputs.iter().map(|u| u.norm_squared()).sum();
    if (total - 1.0).abs() > NUMERIC_TOL {
        return Err(Error::NotUnitTrace(total));
    }
    let c = psi.amplitudes();
    let overlaps: Vec<(Complex64, Complex64)> = outputs
        .iter()
        .map(|u| (c[0].conj() * u[0] + c[3].conj() * u[3], c[1].conj() * u[1] + c[2].conj() * u[2]))
        .collect();
    let ee: f64 = overlaps.iter().map(|a| a.0.norm_sqr()).sum();
    let oo: f64 = overlaps.iter().map(|a| a.1.norm_sqr()).sum();
    let mut disc = 0.0;
    for (i, a) in overlaps.iter().enumerate() {
        for b in &overlaps[i + 1..] {
            disc += (a.0 * b.1 - a.1 * b.0).norm_sqr();
        }
    }
    Ok(ee + oo + 2.0 * disc.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{haar_random_state, ZERO};
    use crate::rng::SeedStream;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Random mixed state of the given rank from a Ginibre matrix.
    fn random_mixed(dim: usize, rank: usize, stream: SeedStream) -> DensityMatrix {
        let mut rng = stream.rng();
        let mut m = DMatrix::from_element(dim, dim, ZERO);
        for _ in 0..rank {
            let v = haar_random_state(dim, &mut rng).unwrap();
            let w: f64 = rand::Rng::random_range(&mut rng, 0.05..1.0);
            m += v.amplitudes() * v.amplitudes().adjoint() * c(w);
        }
        let tr = m.trace().re;
        DensityMatrix::new(m.unscale(tr)).unwrap()
    }

    #[test]
    fn self_fidelity_is_one() {
        let root = SeedStream::new(1);
        for rank in 1..=4 {
            let rho = random_mixed(4, rank, root.split(rank as u64));
            let f = state_fidelity(&rho, &rho).unwrap();
            assert!((f - 1.0).abs() < 1e-10, "rank {rank}: {f}");
        }
    }

    #[test]
    fn orthogonal_pure_states() {
        let a = PureState::basis(4, 0).outer();
        let b = PureState::basis(4, 1).outer();
        assert_eq!(state_fidelity(&a, &b).unwrap(), 0.0);
    }

    #[test]
    fn pure_state_reduces_to_expectation() {
        let root = SeedStream::new(2);
        for i in 0..20 {
            let psi = haar_random_state(4, &mut root.split(i).rng()).unwrap();
            let sigma = random_mixed(4, 1 + (i as usize % 4), root.split(100 + i));
            let f = state_fidelity(&psi.outer(), &sigma).unwrap();
            assert!((f - sigma.expectation(&psi)).abs() < 1e-12);
            let g = state_fidelity(&sigma, &psi.outer()).unwrap();
            assert!((f - g).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetric_and_bounded() {
        let root = SeedStream::new(3);
        for i in 0..300u64 {
            let dim = [2, 4, 8][(i % 3) as usize];
            let r1 = 1 + (i as usize % dim);
            let r2 = 1 + ((i as usize / 3) % dim);
            let rho = random_mixed(dim, r1, root.split(2 * i));
            let sigma = random_mixed(dim, r2, root.split(2 * i + 1));
            let f = state_fidelity(&rho, &sigma).unwrap();
            let g = state_fidelity(&sigma, &rho).unwrap();
            assert!((f - g).abs() < 1e-10, "{f} vs {g}");
            assert!((0.0..=1.0 + 1e-12).contains(&f));
        }
    }

    #[test]
    fn rejects_invalid_inputs() {
        let good = PureState::basis(4, 0).outer();
        let mut m = DMatrix::from_element(4, 4, ZERO);
        m[(0, 0)] = c(1.0);
        m[(0, 1)] = c(0.5);
        let bad = DensityMatrix::from_matrix_unchecked(m);
        assert!(matches!(state_fidelity(&good, &bad), Err(Error::NotHermitian(_))));
        let neg = DensityMatrix::from_matrix_unchecked(DMatrix::from_diagonal(&DVector::from_vec(vec![
            c(1.2),
            c(-0.2),
            c(0.0),
            c(0.0),
        ])));
        assert!(matches!(state_fidelity(&good, &neg), Err(Error::NegativeEigenvalue(_))));
        let two = PureState::basis(2, 0).outer();
        assert!(matches!(state_fidelity(&good, &two), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn split_examples() {
        let s = parity_split(&PureState::basis(4, 1)).unwrap();
        assert!(s.even.is_none());
        assert_eq!(s.p_odd(), 1.0);
        assert_eq!(s.odd.unwrap().state, PureState::basis(4, 1));

        let bell = PureState::two_qubit(c(FRAC_1_SQRT_2), ZERO, ZERO, c(FRAC_1_SQRT_2)).unwrap();
        let s = parity_split(&bell).unwrap();
        assert!((s.p_even() - 1.0).abs() < 1e-15);
        assert!(s.odd.is_none());

        let mixed = PureState::two_qubit(c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2), ZERO, ZERO).unwrap();
        let s = parity_split(&mixed).unwrap();
        assert!((s.p_even() - 0.5).abs() < 1e-15 && (s.p_odd() - 0.5).abs() < 1e-15);
        assert!((s.even.unwrap().state.inner(&PureState::basis(4, 0)).norm() - 1.0).abs() < 1e-15);
        assert!((s.odd.unwrap().state.inner(&PureState::basis(4, 1)).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rank2_of_ideal_is_one() {
        let root = SeedStream::new(4);
        for i in 0..50 {
            let psi = haar_random_state(4, &mut root.split(i).rng()).unwrap();
            let split = parity_split(&psi).unwrap();
            let f = rank2_fidelity(&split, &split.ideal_output()).unwrap();
            assert!((f - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rank2_single_branch() {
        let bell = PureState::two_qubit(c(FRAC_1_SQRT_2), ZERO, ZERO, c(FRAC_1_SQRT_2)).unwrap();
        let split = parity_split(&bell).unwrap();
        let even = split.even.clone().unwrap();
        assert!((rank2_fidelity(&split, &even.state.outer()).unwrap() - 1.0).abs() < 1e-15);
        // the odd subspace is invisible to an even-only ideal
        let f = rank2_fidelity(&split, &PureState::basis(4, 1).outer()).unwrap();
        assert_eq!(f, 0.0);
    }

    #[test]
    fn rank2_matches_uhlmann_on_random_outputs() {
        let root = SeedStream::new(5);
        for i in 0..200 {
            let psi = haar_random_state(4, &mut root.split(i).rng()).unwrap();
            let split = parity_split(&psi).unwrap();
            let rank = 1 + (i as usize % 4);
            let rho_out = random_mixed(4, rank, root.split(1000 + i));
            let f2 = rank2_fidelity(&split, &rho_out).unwrap();
            let fu = state_fidelity(&split.ideal_output(), &rho_out).unwrap();
            // a pure output makes the discriminant vanish, where rounding
            // of order 1e-17 surfaces through the square root
            let tol = if rank == 1 { 1e-7 } else { 1e-10 };
            assert!((f2 - fu).abs() < tol, "rank {rank}: {f2} vs {fu}");
        }
    }

    #[test]
    fn rank2_rejects_bad_split() {
        let split = ParitySplit { even: Some(Branch { probability: 0.7, state: PureState::basis(4, 0) }), odd: None };
        assert_eq!(rank2_fidelity(&split, &PureState::basis(4, 0).outer()), Err(Error::BranchProbabilities(0.7)));
    }

    #[test]
    fn ensemble_form_matches_matrix_forms() {
        let root = SeedStream::new(6);
        for i in 0..200 {
            let psi = haar_random_state(4, &mut root.split(i).rng()).unwrap();
            let split = parity_split(&psi).unwrap();
            let mut rng = root.split(5000 + i).rng();
            let k = 1 + (i as usize % 4);
            let weights: Vec<f64> = (0..k).map(|_| rand::Rng::random_range(&mut rng, 0.05..1.0)).collect();
            let norm: f64 = weights.iter().sum();
            let outputs: Vec<DVector<Complex64>> = weights
                .iter()
                .map(|w| haar_random_state(4, &mut rng).unwrap().amplitudes() * c((w / norm).sqrt()))
                .collect();
            let mut rho = DensityMatrix::zeros(4);
            for u in &outputs {
                rho.add_assign(&DensityMatrix::from_vector(u));
            }
            let fe = rank2_fidelity_ensemble(&psi, &outputs).unwrap();
            let fu = state_fidelity(&split.ideal_output(), &rho).unwrap();
            assert!((fe - fu).abs() < 1e-10, "k={k}: {fe} vs {fu}");
            if k > 1 {
                assert!((fe - rank2_fidelity(&split, &rho).unwrap()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn ensemble_form_rejects_unnormalized() {
        let psi = PureState::basis(4, 0);
        let half = DVector::from_element(4, c(0.25));
        assert!(matches!(rank2_fidelity_ensemble(&psi, &[half]), Err(Error::NotUnitTrace(_))));
    }
}
