//! Dense operators on a register of qubits.
//!
//! Basis index bits follow the usual `|q1 q2 ... qn>` reading: qubit 1 is the
//! most significant bit, so `|100>` is index 4 on three qubits.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dense storage is capped at this many qubits.
pub const MAX_QUBITS: usize = 10;

/// A square `2^n x 2^n` operator stored row-major.
#[derive(Clone, PartialEq)]
pub struct QubitOperator<S> {
    num_qubits: usize,
    entries: Vec<S>,
}

/// Density operators are qubit operators that happen to be states.
pub type DensityOperator<S> = QubitOperator<S>;

impl<S: Scalar> QubitOperator<S> {
    pub fn zeros(num_qubits: usize) -> Result<Self> {
        check_qubit_cap(num_qubits)?;
        let d = 1 << num_qubits;
        Ok(Self {
            num_qubits,
            entries: vec![S::zero(); d * d],
        })
    }

    pub fn identity(num_qubits: usize) -> Result<Self> {
        let mut out = Self::zeros(num_qubits)?;
        for i in 0..out.dim() {
            *out.get_mut(i, i) = S::one();
        }
        Ok(out)
    }

    /// `I / 2^n`.
    pub fn maximally_mixed(num_qubits: usize) -> Result<Self> {
        let scale = S::from_ratio(1, 1 << num_qubits);
        Ok(Self::identity(num_qubits)?.scale(&scale))
    }

    /// Row-major entries of a `2^n x 2^n` matrix.
    pub fn from_entries(entries: Vec<S>) -> Result<Self> {
        let len = entries.len();
        let d = (len as f64).sqrt() as usize;
        if d * d != len || !d.is_power_of_two() {
            return Err(Error::NotQubitShaped { len });
        }
        let num_qubits = d.trailing_zeros() as usize;
        check_qubit_cap(num_qubits)?;
        Ok(Self {
            num_qubits,
            entries,
        })
    }

    pub fn from_rows<const D: usize>(rows: [[S; D]; D]) -> Result<Self> {
        Self::from_entries(rows.into_iter().flatten().collect())
    }

    /// `|i><j|` on `num_qubits` qubits.
    pub fn matrix_unit(num_qubits: usize, i: usize, j: usize) -> Result<Self> {
        let mut out = Self::zeros(num_qubits)?;
        let d = out.dim();
        if i >= d || j >= d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: i.max(j) + 1,
            });
        }
        *out.get_mut(i, j) = S::one();
        Ok(out)
    }

    /// `|b><b|` for a computational basis state given by its bits, qubit 1 first.
    pub fn basis_projector(bits: &[u8]) -> Result<Self> {
        let index = bits
            .iter()
            .fold(0usize, |acc, &b| (acc << 1) | usize::from(b & 1));
        Self::matrix_unit(bits.len(), index, index)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.num_qubits
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> &S {
        &self.entries[row * self.dim() + col]
    }

    pub fn get_mut(&mut self, row: usize, col: usize) -> &mut S {
        let d = self.dim();
        &mut self.entries[row * d + col]
    }

    pub fn trace(&self) -> S {
        (0..self.dim()).fold(S::zero(), |acc, i| acc.add_ref(self.get(i, i)))
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> QubitOperator<T> {
        QubitOperator {
            num_qubits: self.num_qubits,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|x| x.mul_ref(k))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.zip_with(other, S::add_ref))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        Self {
            num_qubits: self.num_qubits,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let d = self.dim();
        let mut entries = Vec::with_capacity(d * d);
        for r in 0..d {
            for c in 0..d {
                entries.push(self.get(c, r).conj());
            }
        }
        Self {
            num_qubits: self.num_qubits,
            entries,
        }
    }

    /// Matrix product, skipping structurally zero entries of `self`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let d = self.dim();
        let mut out = vec![S::zero(); d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    out[r * d + c] = out[r * d + c].add_ref(&a.mul_ref(b));
                }
            }
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            entries: out,
        })
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let d = self.dim();
        (0..d).all(|r| (r..d).all(|c| self.get(r, c).approx_eq(&self.get(c, r).conj(), tol)))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.num_qubits == other.num_qubits
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// Sandwich `K rho K^dagger` where `K` is a single-qubit operator acting
    /// on `qubit` (1-based) and identity elsewhere.
    ///
    /// Only the `2 x 2` blocks are touched, so a Pauli costs one multiply per
    /// entry instead of a full `8 x 8` product.
    pub fn sandwich_local(&self, kraus: &QubitOperator<S>, qubit: usize) -> Result<Self> {
        if kraus.num_qubits != 1 {
            return Err(Error::WrongQubitCount {
                expected: 1,
                found: kraus.num_qubits,
            });
        }
        check_qubit_index(qubit, self.num_qubits)?;
        let shift = self.num_qubits - qubit;
        let mask = 1usize << shift;
        let d = self.dim();
        let k_adj = kraus.adjoint();
        let mut out = vec![S::zero(); d * d];
        for r in 0..d {
            let rb = (r >> shift) & 1;
            for c in 0..d {
                let cb = (c >> shift) & 1;
                let mut acc = S::zero();
                for a in 0..2 {
                    let ka = kraus.get(rb, a);
                    if ka.is_zero() {
                        continue;
                    }
                    let ra = (r & !mask) | (a << shift);
                    for b in 0..2 {
                        let kb = k_adj.get(b, cb);
                        if kb.is_zero() {
                            continue;
                        }
                        let cbb = (c & !mask) | (b << shift);
                        let x = self.get(ra, cbb);
                        if x.is_zero() {
                            continue;
                        }
                        acc = acc.add_ref(&ka.mul_ref(x).mul_ref(kb));
                    }
                }
                out[r * d + c] = acc;
            }
        }
        Ok(Self {
            num_qubits: self.num_qubits,
            entries: out,
        })
    }
}

impl QubitOperator<Complex64> {
    /// Smallest eigenvalue of a Hermitian operator.
    ///
    /// The `n x n` complex Hermitian matrix `A + iB` is embedded as the real
    /// symmetric `[[A, -B], [B, A]]`, whose spectrum is that of the original
    /// with every eigenvalue doubled in multiplicity, then diagonalised with
    /// cyclic Jacobi rotations.
    pub fn min_eigenvalue(&self) -> f64 {
        let n = self.dim();
        let m = 2 * n;
        let mut a = vec![0.0f64; m * m];
        for r in 0..n {
            for c in 0..n {
                let z = self.get(r, c);
                // Symmetrise so slightly non-Hermitian input still gets a real spectrum.
                let w = (z + self.get(c, r).conj()) * 0.5;
                a[r * m + c] = w.re;
                a[(r + n) * m + (c + n)] = w.re;
                a[r * m + (c + n)] = -w.im;
                a[(r + n) * m + c] = w.im;
            }
        }
        jacobi_eigenvalues(&mut a, m)
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }
}

fn jacobi_eigenvalues(a: &mut [f64], m: usize) -> Vec<f64> {
    for _sweep in 0..100 {
        let off: f64 = (0..m)
            .flat_map(|r| (0..m).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[r * m + c] * a[r * m + c])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..m {
            for q in (p + 1)..m {
                let apq = a[p * m + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = a[p * m + p];
                let aqq = a[q * m + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..m).map(|i| a[i * m + i]).collect()
}

impl<S: Scalar + fmt::Display> fmt::Display for QubitOperator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.dim();
        for r in 0..d {
            let row: Vec<String> = (0..d).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<S: fmt::Debug> fmt::Debug for QubitOperator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = 1usize << self.num_qubits;
        let mut list = f.debug_list();
        for row in self.entries.chunks(d) {
            list.entry(&row);
        }
        list.finish()
    }
}

fn check_qubit_cap(num_qubits: usize) -> Result<()> {
    if num_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            num_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

fn check_qubit_index(index: usize, num_qubits: usize) -> Result<()> {
    if index == 0 || index > num_qubits {
        return Err(Error::QubitOutOfRange { index, num_qubits });
    }
    Ok(())
}

/// A unitary stored as an operator `M` together with a power of `1/sqrt(2)`:
/// the unitary is `M / sqrt(2)^k`.
///
/// This keeps the Hadamard exact over rational scalars. Conjugation always
/// pairs the factor with its adjoint so only whole powers of `1/2` reach the
/// state.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate<S> {
    pub matrix: QubitOperator<S>,
    pub inv_sqrt2_power: u32,
}

impl<S: Scalar> Gate<S> {
    pub fn new(matrix: QubitOperator<S>, inv_sqrt2_power: u32) -> Self {
        Self {
            matrix,
            inv_sqrt2_power,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.matrix.num_qubits()
    }

    pub fn identity(num_qubits: usize) -> Result<Self> {
        Ok(Self::new(QubitOperator::identity(num_qubits)?, 0))
    }

    /// The gate as a plain operator; only valid when no `sqrt(2)` factor
    /// remains or the backend can represent it.
    pub fn to_operator_with(&self, inv_sqrt2: &S) -> QubitOperator<S> {
        let mut factor = S::one();
        for _ in 0..self.inv_sqrt2_power {
            factor = factor.mul_ref(inv_sqrt2);
        }
        self.matrix.scale(&factor)
    }

    pub fn compose(&self, after: &Self) -> Result<Self> {
        Ok(Self::new(
            after.matrix.matmul(&self.matrix)?,
            self.inv_sqrt2_power + after.inv_sqrt2_power,
        ))
    }
}

impl<S: Scalar> From<QubitOperator<S>> for Gate<S> {
    fn from(matrix: QubitOperator<S>) -> Self {
        Self::new(matrix, 0)
    }
}

/// Kronecker product with `a`'s qubits leftmost.
pub fn tensor<S: Scalar>(a: &QubitOperator<S>, b: &QubitOperator<S>) -> Result<QubitOperator<S>> {
    let num_qubits = a.num_qubits + b.num_qubits;
    check_qubit_cap(num_qubits)?;
    let (da, db) = (a.dim(), b.dim());
    let d = da * db;
    let mut entries = vec![S::zero(); d * d];
    for ar in 0..da {
        for ac in 0..da {
            let x = a.get(ar, ac);
            if x.is_zero() {
                continue;
            }
            for br in 0..db {
                for bc in 0..db {
                    entries[(ar * db + br) * d + ac * db + bc] = x.mul_ref(b.get(br, bc));
                }
            }
        }
    }
    Ok(QubitOperator {
        num_qubits,
        entries,
    })
}

/// Kronecker product of a list of operators, left to right.
pub fn tensor_all<S: Scalar>(factors: &[QubitOperator<S>]) -> Result<QubitOperator<S>> {
    let (first, rest) = factors
        .split_first()
        .ok_or(Error::NotQubitShaped { len: 0 })?;
    rest.iter()
        .try_fold(first.clone(), |acc, f| tensor(&acc, f))
}

pub fn tensor_gates<S: Scalar>(a: &Gate<S>, b: &Gate<S>) -> Result<Gate<S>> {
    Ok(Gate::new(
        tensor(&a.matrix, &b.matrix)?,
        a.inv_sqrt2_power + b.inv_sqrt2_power,
    ))
}

/// Reduced operator on the qubits in `keep` (1-based), in `keep` order.
pub fn partial_trace<S: Scalar>(
    rho: &QubitOperator<S>,
    keep: &[usize],
) -> Result<QubitOperator<S>> {
    if keep.is_empty() {
        return Err(Error::EmptyKeep);
    }
    let n = rho.num_qubits;
    let mut seen = vec![false; n + 1];
    for &q in keep {
        check_qubit_index(q, n)?;
        if seen[q] {
            return Err(Error::DuplicateQubit(q));
        }
        seen[q] = true;
    }
    let traced: Vec<usize> = (1..=n).filter(|&q| !seen[q]).collect();
    let bit = |q: usize| 1usize << (n - q);
    // Scatter a kept-register index and a traced-register index into a full index.
    let place = |kept: usize, env: usize| -> usize {
        let mut idx = 0;
        for (pos, &q) in keep.iter().enumerate() {
            if (kept >> (keep.len() - 1 - pos)) & 1 == 1 {
                idx |= bit(q);
            }
        }
        for (pos, &q) in traced.iter().enumerate() {
            if (env >> (traced.len() - 1 - pos)) & 1 == 1 {
                idx |= bit(q);
            }
        }
        idx
    };
    let dk = 1usize << keep.len();
    let de = 1usize << traced.len();
    let mut out = QubitOperator::zeros(keep.len())?;
    for r in 0..dk {
        for c in 0..dk {
            let mut acc = S::zero();
            for e in 0..de {
                acc = acc.add_ref(rho.get(place(r, e), place(c, e)));
            }
            *out.get_mut(r, c) = acc;
        }
    }
    Ok(out)
}

/// `U rho U^dagger`.
pub fn conjugate_by<S: Scalar>(rho: &QubitOperator<S>, u: &Gate<S>) -> Result<QubitOperator<S>> {
    if u.num_qubits() != rho.num_qubits {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: u.matrix.dim(),
        });
    }
    let sandwiched = u.matrix.matmul(rho)?.matmul(&u.matrix.adjoint())?;
    // (1/sqrt2)^k on each side combine to 2^-k.
    if u.inv_sqrt2_power == 0 {
        return Ok(sandwiched);
    }
    Ok(sandwiched.scale(&S::from_ratio(1, 1u64 << u.inv_sqrt2_power)))
}

/// A pure state given by its amplitudes, qubit 1 most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState<S> {
    amplitudes: Vec<S>,
}

impl<S: Scalar> PureState<S> {
    pub fn new(amplitudes: Vec<S>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() || len < 2 {
            return Err(Error::NotQubitShaped { len });
        }
        check_qubit_cap(len.trailing_zeros() as usize)?;
        Ok(Self { amplitudes })
    }

    pub fn qubit(alpha: S, beta: S) -> Self {
        Self {
            amplitudes: vec![alpha, beta],
        }
    }

    pub fn amplitudes(&self) -> &[S] {
        &self.amplitudes
    }

    pub fn num_qubits(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn norm_sqr(&self) -> S {
        self.amplitudes
            .iter()
            .fold(S::zero(), |acc, a| acc.add_ref(&a.norm_sqr()))
    }

    /// `|psi><psi|`.
    pub fn projector(&self) -> QubitOperator<S> {
        let d = self.amplitudes.len();
        let mut entries = Vec::with_capacity(d * d);
        for a in &self.amplitudes {
            for b in &self.amplitudes {
                entries.push(a.mul_ref(&b.conj()));
            }
        }
        QubitOperator {
            num_qubits: self.num_qubits(),
            entries,
        }
    }
}

/// `<psi| rho |psi>`.
pub fn fidelity_with<S: Scalar>(psi: &PureState<S>, rho: &QubitOperator<S>) -> Result<S> {
    let d = psi.amplitudes.len();
    if d != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: d,
        });
    }
    let mut acc = S::zero();
    for r in 0..d {
        let left = psi.amplitudes[r].conj();
        if left.is_zero() {
            continue;
        }
        for c in 0..d {
            let x = rho.get(r, c);
            if x.is_zero() || psi.amplitudes[c].is_zero() {
                continue;
            }
            acc = acc.add_ref(&left.mul_ref(x).mul_ref(&psi.amplitudes[c]));
        }
    }
    Ok(acc)
}
