//! Operators and states on truncated qubit / Fock product spaces.
//!
//! Composite spaces are ordered: the first factor of a [`tensor`] product is
//! the most significant index. The qubit convention is fixed throughout the
//! crate: basis index 0 is the excited state `|e⟩` (the `σ_z = +1`
//! eigenvector) and index 1 is the ground state `|g⟩`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Tolerance used when an operator is claimed to be Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Allowed deviation of `‖ψ‖` (or `Tr ρ`) from one at state construction.
pub const NORM_TOL: f64 = 1e-9;
/// Most negative eigenvalue accepted for a density matrix at construction.
pub const POSITIVITY_TOL: f64 = 1e-9;

/// Dense complex operator together with its subsystem factorization.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    matrix: DMatrix<Complex64>,
    dims: Vec<usize>,
}

impl Operator {
    pub fn new(matrix: DMatrix<Complex64>, dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidDimension(alloc::format!(
                "operator matrix is {}x{}, not square",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let product: usize = dims.iter().product();
        if dims.is_empty() || product != matrix.nrows() {
            return Err(Error::InvalidDimension(alloc::format!(
                "dims {:?} do not factor a matrix of side {}",
                dims,
                matrix.nrows()
            )));
        }
        Ok(Self { matrix, dims })
    }

    /// Operator on a single subsystem of dimension `matrix.nrows()`.
    pub fn single(matrix: DMatrix<Complex64>) -> Result<Self> {
        let n = matrix.nrows();
        Self::new(matrix, vec![n])
    }

    pub fn identity(dims: &[usize]) -> Self {
        let n = dims.iter().product();
        Self { matrix: DMatrix::identity(n, n), dims: dims.to_vec() }
    }

    pub fn zeros(dims: &[usize]) -> Self {
        let n = dims.iter().product();
        Self { matrix: DMatrix::zeros(n, n), dims: dims.to_vec() }
    }

    /// Real diagonal operator on a single subsystem.
    pub fn diagonal(entries: &[f64]) -> Self {
        let n = entries.len();
        let mut matrix = DMatrix::zeros(n, n);
        for (i, &e) in entries.iter().enumerate() {
            matrix[(i, i)] = Complex64::new(e, 0.0);
        }
        Self { matrix, dims: vec![n] }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Side length of the matrix.
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self { matrix: self.matrix.adjoint(), dims: self.dims.clone() }
    }

    /// `max |M - M†|` over all entries.
    pub fn hermiticity_deviation(&self) -> f64 {
        linalg::hermiticity_deviation(&self.matrix)
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_deviation() <= HERMITIAN_TOL
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.scale_complex(Complex64::new(factor, 0.0))
    }

    pub fn scale_complex(&self, factor: Complex64) -> Self {
        Self { matrix: &self.matrix * factor, dims: self.dims.clone() }
    }

    pub fn commutator(&self, other: &Operator) -> Self {
        &(self * other) - &(other * self)
    }

    /// `max |A - B|` entrywise; panics if the spaces differ.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dims, other.dims, "operators act on different spaces");
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    /// Lift a single-subsystem operator into the product space `dims`,
    /// acting on factor `slot` and as the identity elsewhere.
    pub fn embed(&self, dims: &[usize], slot: usize) -> Result<Self> {
        if slot >= dims.len() || dims[slot] != self.dim() {
            return Err(Error::InvalidDimension(alloc::format!(
                "cannot embed a {}-level operator at slot {slot} of {:?}",
                self.dim(),
                dims
            )));
        }
        let factors: Vec<Operator> = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i == slot { self.clone() } else { Operator::identity(&[d]) })
            .collect();
        tensor(&factors)
    }
}

fn assert_same_space(a: &Operator, b: &Operator) {
    assert_eq!(a.dims, b.dims, "operators act on different spaces");
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        assert_same_space(self, rhs);
        Operator { matrix: &self.matrix + &rhs.matrix, dims: self.dims.clone() }
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        assert_same_space(self, rhs);
        Operator { matrix: &self.matrix - &rhs.matrix, dims: self.dims.clone() }
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        assert_same_space(self, rhs);
        Operator { matrix: &self.matrix * &rhs.matrix, dims: self.dims.clone() }
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        Operator { matrix: -&self.matrix, dims: self.dims.clone() }
    }
}

/// Truncated lowering operator with `√m` at `(m-1, m)`.
pub fn make_annihilation(dim: usize) -> Result<Operator> {
    if dim < 2 {
        return Err(Error::InvalidDimension(alloc::format!(
            "Fock truncation must be at least 2, got {dim}"
        )));
    }
    let mut matrix = DMatrix::zeros(dim, dim);
    for m in 1..dim {
        matrix[(m - 1, m)] = Complex64::new(libm::sqrt(m as f64), 0.0);
    }
    Ok(Operator { matrix, dims: vec![dim] })
}

pub fn make_creation(dim: usize) -> Result<Operator> {
    make_annihilation(dim).map(|a| a.adjoint())
}

/// `a†a = diag(0, 1, …, dim-1)`.
pub fn make_number(dim: usize) -> Result<Operator> {
    if dim < 2 {
        return Err(Error::InvalidDimension(alloc::format!(
            "Fock truncation must be at least 2, got {dim}"
        )));
    }
    let levels: Vec<f64> = (0..dim).map(|n| n as f64).collect();
    Ok(Operator::diagonal(&levels))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

pub fn make_pauli(axis: PauliAxis) -> Operator {
    let i = Complex64::new(0.0, 1.0);
    let entries = match axis {
        PauliAxis::X => [ZERO, ONE, ONE, ZERO],
        PauliAxis::Y => [ZERO, -i, i, ZERO],
        PauliAxis::Z => [ONE, ZERO, ZERO, -ONE],
    };
    Operator { matrix: DMatrix::from_row_slice(2, 2, &entries), dims: vec![2] }
}

/// Qubit lowering operator `σ₋ = |g⟩⟨e|`.
pub fn sigma_minus() -> Operator {
    let mut matrix = DMatrix::zeros(2, 2);
    matrix[(1, 0)] = ONE;
    Operator { matrix, dims: vec![2] }
}

/// Projector onto the excited qubit state, `(1 + σ_z) / 2`.
pub fn excited_projector() -> Operator {
    Operator::diagonal(&[1.0, 0.0])
}

pub fn ground_projector() -> Operator {
    Operator::diagonal(&[0.0, 1.0])
}

/// Kronecker product in the given order; dims are concatenated.
pub fn tensor(factors: &[Operator]) -> Result<Operator> {
    let (first, rest) = factors.split_first().ok_or(Error::EmptyProduct)?;
    let mut acc = first.clone();
    for f in rest {
        acc.matrix = acc.matrix.kronecker(&f.matrix);
        acc.dims.extend_from_slice(&f.dims);
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Pure(DVector<Complex64>),
    Density(DMatrix<Complex64>),
}

/// Pure state vector or density matrix on a product space.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    repr: Repr,
    dims: Vec<usize>,
}

fn check_dims(len: usize, dims: &[usize]) -> Result<()> {
    let product: usize = dims.iter().product();
    if dims.is_empty() || product != len {
        return Err(Error::InvalidDimension(alloc::format!(
            "dims {dims:?} do not factor a space of dimension {len}"
        )));
    }
    Ok(())
}

impl QuantumState {
    pub fn pure(vector: DVector<Complex64>, dims: Vec<usize>) -> Result<Self> {
        check_dims(vector.len(), &dims)?;
        let norm = vector.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(alloc::format!("state norm is {norm}, expected 1")));
        }
        Ok(Self { repr: Repr::Pure(vector), dims })
    }

    pub fn density(matrix: DMatrix<Complex64>, dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidState("density matrix is not square".into()));
        }
        check_dims(matrix.nrows(), &dims)?;
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > NORM_TOL || trace.im.abs() > NORM_TOL {
            return Err(Error::InvalidState(alloc::format!("trace is {trace}, expected 1")));
        }
        let herm = linalg::hermiticity_deviation(&matrix);
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidState(alloc::format!(
                "density matrix not Hermitian (deviation {herm:e})"
            )));
        }
        if !linalg::is_positive_above(&matrix, -POSITIVITY_TOL) {
            return Err(Error::InvalidState("density matrix has a negative eigenvalue".into()));
        }
        Ok(Self { repr: Repr::Density(matrix), dims })
    }

    /// Product basis state `|i₁, i₂, …⟩`.
    pub fn basis(dims: &[usize], indices: &[usize]) -> Result<Self> {
        if dims.len() != indices.len() || dims.is_empty() {
            return Err(Error::InvalidDimension(alloc::format!(
                "{} indices given for {} subsystems",
                indices.len(),
                dims.len()
            )));
        }
        let mut flat = 0;
        for (&d, &i) in dims.iter().zip(indices) {
            if i >= d {
                return Err(Error::InvalidDimension(alloc::format!(
                    "level {i} outside a {d}-level subsystem"
                )));
            }
            flat = flat * d + i;
        }
        let n = dims.iter().product();
        let mut v = DVector::zeros(n);
        v[flat] = ONE;
        Ok(Self { repr: Repr::Pure(v), dims: dims.to_vec() })
    }

    /// Fock state `|n⟩` of a single truncated mode.
    pub fn fock(dim: usize, n: usize) -> Result<Self> {
        Self::basis(&[dim], &[n])
    }

    /// Every factor in basis level 0. Meant for pure Fock spaces; for a
    /// qubit factor level 0 is `|e⟩`.
    pub fn vacuum(dims: &[usize]) -> Result<Self> {
        Self::basis(dims, &vec![0; dims.len()])
    }

    pub fn maximally_mixed(dims: &[usize]) -> Result<Self> {
        check_dims(dims.iter().product(), dims)?;
        let n: usize = dims.iter().product();
        let matrix = DMatrix::identity(n, n) * Complex64::new(1.0 / n as f64, 0.0);
        Ok(Self { repr: Repr::Density(matrix), dims: dims.to_vec() })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        match &self.repr {
            Repr::Pure(v) => v.len(),
            Repr::Density(m) => m.nrows(),
        }
    }

    pub fn is_pure_vector(&self) -> bool {
        matches!(self.repr, Repr::Pure(_))
    }

    pub fn as_vector(&self) -> Option<&DVector<Complex64>> {
        match &self.repr {
            Repr::Pure(v) => Some(v),
            Repr::Density(_) => None,
        }
    }

    pub fn as_density(&self) -> Option<&DMatrix<Complex64>> {
        match &self.repr {
            Repr::Pure(_) => None,
            Repr::Density(m) => Some(m),
        }
    }

    /// `|ψ⟩⟨ψ|` for a pure state; a clone for a density matrix.
    pub fn to_density(&self) -> Self {
        match &self.repr {
            Repr::Pure(v) => Self { repr: Repr::Density(v * v.adjoint()), dims: self.dims.clone() },
            Repr::Density(_) => self.clone(),
        }
    }

    /// `‖ψ‖²` or `Tr ρ`.
    pub fn trace(&self) -> f64 {
        match &self.repr {
            Repr::Pure(v) => v.norm_squared(),
            Repr::Density(m) => m.trace().re,
        }
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        match &self.repr {
            Repr::Pure(v) => {
                let n = v.norm_squared();
                n * n
            }
            Repr::Density(m) => m.iter().map(|z| z.norm_sqr()).sum(),
        }
    }

    /// Smallest eigenvalue of the density matrix (zero-padded spectrum for
    /// a pure vector of dimension > 1).
    pub fn min_eigenvalue(&self) -> f64 {
        match &self.repr {
            Repr::Pure(v) if v.len() > 1 => 0.0,
            Repr::Pure(v) => v.norm_squared(),
            Repr::Density(m) => linalg::min_hermitian_eigenvalue(m),
        }
    }

    pub(crate) fn from_vector_unchecked(vector: DVector<Complex64>, dims: Vec<usize>) -> Self {
        Self { repr: Repr::Pure(vector), dims }
    }

    pub(crate) fn from_density_unchecked(matrix: DMatrix<Complex64>, dims: Vec<usize>) -> Self {
        Self { repr: Repr::Density(matrix), dims }
    }
}

/// `⟨ψ|O|ψ⟩` or `Tr(ρ O)`.
pub fn expectation(state: &QuantumState, obs: &Operator) -> Result<Complex64> {
    if state.dim() != obs.dim() || state.dims() != obs.dims() {
        return Err(Error::DimensionMismatch { expected: obs.dim(), found: state.dim() });
    }
    Ok(match &state.repr {
        Repr::Pure(v) => v.dotc(&(obs.matrix() * v)),
        Repr::Density(rho) => trace_of_product(rho, obs.matrix()),
    })
}

/// `Tr(A B)` without forming the product.
pub(crate) fn trace_of_product(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Complex64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn annihilation_lowest_truncation() {
        let a = make_annihilation(2).unwrap();
        assert_eq!(a.get(0, 1), c(1.0));
        assert_eq!(a.get(0, 0), c(0.0));
        assert_eq!(a.get(1, 0), c(0.0));
        assert_eq!(a.get(1, 1), c(0.0));
    }

    #[test]
    fn number_operator_from_ladder() {
        for d in 2..8 {
            let a = make_annihilation(d).unwrap();
            let n = &a.adjoint() * &a;
            let expected = make_number(d).unwrap();
            assert!(n.max_abs_diff(&expected) < 1e-14);
        }
    }

    #[test]
    fn commutator_truncation_artifact() {
        let a = make_annihilation(4).unwrap();
        let comm = a.commutator(&a.adjoint());
        let expected = Operator::diagonal(&[1.0, 1.0, 1.0, -3.0]);
        assert!(comm.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn annihilation_rejects_small_dim() {
        assert!(matches!(make_annihilation(1), Err(Error::InvalidDimension(_))));
        assert!(make_annihilation(0).is_err());
    }

    #[test]
    fn pauli_matrices() {
        let z = make_pauli(PauliAxis::Z);
        assert!(z.max_abs_diff(&Operator::diagonal(&[1.0, -1.0])) == 0.0);
        let x = make_pauli(PauliAxis::X);
        assert_eq!(x.get(0, 1), c(1.0));
        assert_eq!(x.get(1, 0), c(1.0));
        assert_eq!(x.get(0, 0), c(0.0));
        let x2 = &x * &x;
        assert!(x2.max_abs_diff(&Operator::identity(&[2])) == 0.0);
        let y = make_pauli(PauliAxis::Y);
        // σ_x σ_y = i σ_z
        let xy = &x * &y;
        let iz = z.scale_complex(Complex64::new(0.0, 1.0));
        assert!(xy.max_abs_diff(&iz) < 1e-15);
    }

    #[test]
    fn sigma_minus_lowers_excited_state() {
        let e = QuantumState::basis(&[2], &[0]).unwrap();
        let sm = sigma_minus();
        let lowered = sm.matrix() * e.as_vector().unwrap();
        assert_eq!(lowered[1], c(1.0));
        assert_eq!(lowered[0], c(0.0));
    }

    #[test]
    fn tensor_identities() {
        let i6 = tensor(&[Operator::identity(&[2]), Operator::identity(&[3])]).unwrap();
        assert_eq!(i6.dims(), &[2, 3]);
        assert!(i6.max_abs_diff(&Operator::identity(&[2, 3])) == 0.0);
    }

    #[test]
    fn tensor_sigma_z_number() {
        let op = tensor(&[make_pauli(PauliAxis::Z), make_number(3).unwrap()]).unwrap();
        let expected = [0.0, 1.0, 2.0, 0.0, -1.0, -2.0];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(op.get(i, i), c(e));
        }
        assert_eq!(op.dim(), 6);
    }

    #[test]
    fn tensor_of_nothing_is_an_error() {
        assert_eq!(tensor(&[]), Err(Error::EmptyProduct));
    }

    #[test]
    fn expectation_values() {
        let n = make_number(5).unwrap();
        let vac = QuantumState::fock(5, 0).unwrap();
        assert_eq!(expectation(&vac, &n).unwrap(), c(0.0));
        let one = QuantumState::fock(5, 1).unwrap();
        assert_eq!(expectation(&one, &n).unwrap(), c(1.0));
        let mixed = QuantumState::maximally_mixed(&[2]).unwrap();
        let z = make_pauli(PauliAxis::Z);
        assert!(expectation(&mixed, &z).unwrap().norm() < 1e-15);
        assert!(matches!(
            expectation(&mixed, &n),
            Err(Error::DimensionMismatch { expected: 5, found: 2 })
        ));
    }

    #[test]
    fn state_construction_invariants() {
        let v = DVector::from_vec(vec![c(1.0), c(1.0)]);
        assert!(QuantumState::pure(v, vec![2]).is_err());
        let bad = DMatrix::from_row_slice(2, 2, &[c(1.2), c(0.0), c(0.0), c(-0.2)]);
        assert!(QuantumState::density(bad, vec![2]).is_err());
        let ok = DMatrix::from_row_slice(2, 2, &[c(0.5), c(0.5), c(0.5), c(0.5)]);
        let rho = QuantumState::density(ok, vec![2]).unwrap();
        assert!((rho.purity() - 1.0).abs() < 1e-14);
        assert!(rho.min_eigenvalue().abs() < 1e-12);
    }

    #[test]
    fn embed_matches_tensor() {
        let a = make_annihilation(3).unwrap();
        let lifted = a.embed(&[2, 3, 4], 1).unwrap();
        let direct = tensor(&[Operator::identity(&[2]), a, Operator::identity(&[4])]).unwrap();
        assert_eq!(lifted, direct);
    }

    fn small_operator() -> impl Strategy<Value = Operator> {
        (1usize..4).prop_flat_map(|n| {
            proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n).prop_map(move |v| {
                let entries: Vec<Complex64> =
                    v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
                Operator::single(DMatrix::from_row_slice(n, n, &entries)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn adjoint_is_an_involution(d in 2usize..20) {
            let a = make_annihilation(d).unwrap();
            prop_assert_eq!(a.adjoint().adjoint(), a);
        }

        #[test]
        fn tensor_is_associative(a in small_operator(), b in small_operator(), c in small_operator()) {
            let left = tensor(&[tensor(&[a.clone(), b.clone()]).unwrap(), c.clone()]).unwrap();
            let right = tensor(&[a, tensor(&[b, c]).unwrap()]).unwrap();
            prop_assert_eq!(left.dims(), right.dims());
            prop_assert!(left.max_abs_diff(&right) < 1e-15);
        }

        #[test]
        fn hermitian_expectation_is_real(
            re in proptest::collection::vec(-1.0f64..1.0, 6),
            im in proptest::collection::vec(-1.0f64..1.0, 6),
        ) {
            let v: Vec<Complex64> = re.iter().zip(&im).map(|(&r, &i)| Complex64::new(r, i)).collect();
            let v = DVector::from_vec(v);
            let norm = v.norm();
            prop_assume!(norm > 1e-3);
            let psi = QuantumState::pure(v / Complex64::new(norm, 0.0), vec![2, 3]).unwrap();
            let h = tensor(&[make_pauli(PauliAxis::X), make_annihilation(3).unwrap()]).unwrap();
            let h = &h + &h.adjoint();
            prop_assert!(expectation(&psi, &h).unwrap().im.abs() <= 1e-10);
            let rho = psi.to_density();
            prop_assert!(expectation(&rho, &h).unwrap().im.abs() <= 1e-10);
        }
    }
}
