//! Uniform periodic grids and Fourier-space calculus.
//!
//! Transform convention: the forward transform is the unnormalized DFT
//! `c_j = Σ_m f_m e^{-2πi jm/n}` and the inverse divides by `n`, so a constant
//! field `1` has `c_0 = n` and every other coefficient zero. Every module in
//! the crate goes through [`Transform`], so this is the only place the
//! convention lives.

use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::scalar::{abs, count, lit, Real};

/// Uniform periodic grid on `[-L, L)` together with its spectral wavenumbers.
///
/// The wavenumber at the Nyquist slot `n/2` is zero, so odd derivatives and the
/// antiderivative annihilate that mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<T> {
    n: usize,
    dx: T,
    half_length: T,
    points: Vec<T>,
    wavenumbers: Vec<T>,
}

impl<T: Real> Grid<T> {
    pub fn new(n: usize, dx: T) -> Result<Self> {
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "number of points must be even and at least 4, got {n}"
            )));
        }
        if !(dx > T::zero()) || !dx.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "spacing must be positive and finite, got {dx}"
            )));
        }
        let half = n / 2;
        let half_length = count::<T>(half) * dx;
        let points = (0..n)
            .map(|j| (count::<T>(j) - count::<T>(half)) * dx)
            .collect();
        let dk = lit::<T>(2.0) * T::PI() / (count::<T>(n) * dx);
        let wavenumbers = (0..n)
            .map(|j| Self::integer_mode_of(n, j) as f64)
            .map(|m| lit::<T>(m) * dk)
            .collect();
        Ok(Self {
            n,
            dx,
            half_length,
            points,
            wavenumbers,
        })
    }

    /// Integer mode pattern `(0, 1, …, n/2−1, 0, −n/2+1, …, −1)`.
    fn integer_mode_of(n: usize, j: usize) -> i64 {
        let half = n / 2;
        if j < half {
            j as i64
        } else if j == half {
            0
        } else {
            j as i64 - n as i64
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dx(&self) -> T {
        self.dx
    }

    /// Half length `L = n·dx/2`.
    pub fn half_length(&self) -> T {
        self.half_length
    }

    /// Spectral resolution `2π/(n·dx)`.
    pub fn dk(&self) -> T {
        lit::<T>(2.0) * T::PI() / (count::<T>(self.n) * self.dx)
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn wavenumbers(&self) -> &[T] {
        &self.wavenumbers
    }

    pub fn integer_mode(&self, j: usize) -> i64 {
        Self::integer_mode_of(self.n, j)
    }

    /// Index of the grid point at `x = 0`.
    pub fn center_index(&self) -> usize {
        self.n / 2
    }

    /// Modes retained by the 2/3 rule: `|m| < n/3`, Nyquist slot removed.
    pub fn dealias_mask(&self) -> Vec<bool> {
        (0..self.n)
            .map(|j| j != self.n / 2 && (self.integer_mode(j).unsigned_abs() as usize) * 3 < self.n)
            .collect()
    }

    /// Index of the point whose coordinate equals `x` to within `tol`.
    pub fn index_of(&self, x: T, tol: T) -> Option<usize> {
        let rel = (x + self.half_length) / self.dx;
        let j = rel.round();
        if j < T::zero() || j >= count::<T>(self.n) {
            return None;
        }
        let j = j.to_usize()?;
        (abs(self.points[j] - x) <= tol).then_some(j)
    }
}

/// Which space a [`SpectralField`] currently lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    Physical,
    Spectral,
}

impl Representation {
    fn name(self) -> &'static str {
        match self {
            Representation::Physical => "physical",
            Representation::Spectral => "spectral",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum FieldData<T> {
    Physical(Vec<T>),
    Spectral(Vec<Complex<T>>),
}

/// A real field on a [`Grid`], held either as samples or as DFT coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField<T: Real> {
    grid: Arc<Grid<T>>,
    data: FieldData<T>,
}

impl<T: Real> SpectralField<T> {
    pub fn physical(grid: Arc<Grid<T>>, values: Vec<T>) -> Result<Self> {
        check_len(&grid, values.len())?;
        Ok(Self {
            grid,
            data: FieldData::Physical(values),
        })
    }

    pub fn spectral(grid: Arc<Grid<T>>, coefficients: Vec<Complex<T>>) -> Result<Self> {
        check_len(&grid, coefficients.len())?;
        Ok(Self {
            grid,
            data: FieldData::Spectral(coefficients),
        })
    }

    /// Samples `f` at the grid points.
    pub fn from_fn(grid: Arc<Grid<T>>, f: impl Fn(T) -> T) -> Self {
        let values = grid.points().iter().map(|&x| f(x)).collect();
        Self {
            grid,
            data: FieldData::Physical(values),
        }
    }

    pub fn grid(&self) -> &Arc<Grid<T>> {
        &self.grid
    }

    pub fn representation(&self) -> Representation {
        match self.data {
            FieldData::Physical(_) => Representation::Physical,
            FieldData::Spectral(_) => Representation::Spectral,
        }
    }

    pub fn values(&self) -> Result<&[T]> {
        match &self.data {
            FieldData::Physical(v) => Ok(v),
            FieldData::Spectral(_) => Err(mismatch(Representation::Physical, self)),
        }
    }

    pub fn coefficients(&self) -> Result<&[Complex<T>]> {
        match &self.data {
            FieldData::Spectral(c) => Ok(c),
            FieldData::Physical(_) => Err(mismatch(Representation::Spectral, self)),
        }
    }

    pub fn into_values(self) -> Result<Vec<T>> {
        match self.data {
            FieldData::Physical(v) => Ok(v),
            FieldData::Spectral(_) => Err(Error::Representation {
                expected: "physical",
                found: "spectral",
            }),
        }
    }

    pub fn into_coefficients(self) -> Result<Vec<Complex<T>>> {
        match self.data {
            FieldData::Spectral(c) => Ok(c),
            FieldData::Physical(_) => Err(Error::Representation {
                expected: "spectral",
                found: "physical",
            }),
        }
    }
}

fn check_len<T: Real>(grid: &Grid<T>, found: usize) -> Result<()> {
    if found != grid.len() {
        return Err(Error::Length {
            expected: grid.len(),
            found,
        });
    }
    Ok(())
}

fn mismatch<T: Real>(expected: Representation, field: &SpectralField<T>) -> Error {
    Error::Representation {
        expected: expected.name(),
        found: field.representation().name(),
    }
}

/// Result of an inverse transform projected onto real values.
#[derive(Debug, Clone, PartialEq)]
pub struct RealProjection<T> {
    pub values: Vec<T>,
    /// Largest imaginary magnitude dropped by the projection.
    pub discarded_imaginary: T,
}

/// FFT plans bound to a grid. Immutable after construction, so one instance can
/// be shared between threads; callers that want allocation-free transforms
/// supply their own buffers through the `*_in_place` methods.
#[derive(Clone)]
pub struct Transform<T: Real> {
    grid: Arc<Grid<T>>,
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
}

impl<T: Real> std::fmt::Debug for Transform<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Transform")
            .field("n", &self.grid.len())
            .finish()
    }
}

impl<T: Real> Transform<T> {
    pub fn new(grid: Arc<Grid<T>>) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(grid.len());
        let inverse = planner.plan_fft_inverse(grid.len());
        Self {
            grid,
            forward,
            inverse,
        }
    }

    pub fn grid(&self) -> &Arc<Grid<T>> {
        &self.grid
    }

    pub fn scratch_len(&self) -> usize {
        self.forward
            .get_inplace_scratch_len()
            .max(self.inverse.get_inplace_scratch_len())
    }

    /// Allocates a scratch buffer large enough for either direction.
    pub fn make_scratch(&self) -> Vec<Complex<T>> {
        vec![Complex::zero(); self.scratch_len()]
    }

    /// Unnormalized forward DFT in place.
    pub fn forward_in_place(&self, buf: &mut [Complex<T>], scratch: &mut [Complex<T>]) {
        self.forward.process_with_scratch(buf, scratch);
    }

    /// Inverse DFT in place, including the `1/n` normalization.
    pub fn inverse_in_place(&self, buf: &mut [Complex<T>], scratch: &mut [Complex<T>]) {
        self.inverse.process_with_scratch(buf, scratch);
        let scale = T::one() / count::<T>(buf.len());
        for c in buf.iter_mut() {
            *c = c.scale(scale);
        }
    }

    /// Forward transforms of two real signals with a single complex FFT.
    ///
    /// The outputs are exactly conjugate-symmetric.
    pub fn forward_pair(
        &self,
        a: &[T],
        b: &[T],
        a_hat: &mut [Complex<T>],
        b_hat: &mut [Complex<T>],
        buf: &mut [Complex<T>],
        scratch: &mut [Complex<T>],
    ) {
        let n = buf.len();
        for ((z, &x), &y) in buf.iter_mut().zip(a).zip(b) {
            *z = Complex::new(x, y);
        }
        self.forward_in_place(buf, scratch);
        let half = lit::<T>(0.5);
        for j in 0..n {
            let z = buf[j];
            let zc = buf[(n - j) % n].conj();
            a_hat[j] = (z + zc).scale(half);
            let d = (z - zc).scale(half);
            // (z - zc) / (2i)
            b_hat[j] = Complex::new(d.im, -d.re);
        }
    }

    /// Inverse transforms of two conjugate-symmetric spectra with a single
    /// complex FFT; imaginary round-off of each result is discarded.
    pub fn inverse_pair(
        &self,
        a_hat: &[Complex<T>],
        b_hat: &[Complex<T>],
        a: &mut [T],
        b: &mut [T],
        buf: &mut [Complex<T>],
        scratch: &mut [Complex<T>],
    ) {
        for ((z, &p), &q) in buf.iter_mut().zip(a_hat).zip(b_hat) {
            // p + i q
            *z = Complex::new(p.re - q.im, p.im + q.re);
        }
        self.inverse_in_place(buf, scratch);
        for ((z, x), y) in buf.iter().zip(a.iter_mut()).zip(b.iter_mut()) {
            *x = z.re;
            *y = z.im;
        }
    }

    /// Forward transform of real samples, projected onto exact conjugate symmetry.
    pub fn forward_real(&self, values: &[T]) -> Vec<Complex<T>> {
        let mut buf: Vec<Complex<T>> = values.iter().map(|&v| Complex::new(v, T::zero())).collect();
        let mut scratch = self.make_scratch();
        self.forward_in_place(&mut buf, &mut scratch);
        symmetrize(&mut buf);
        buf
    }

    /// Inverse transform followed by the real-part projection.
    pub fn inverse_real(&self, coefficients: &[Complex<T>]) -> RealProjection<T> {
        let mut buf = coefficients.to_vec();
        let mut scratch = self.make_scratch();
        self.inverse_in_place(&mut buf, &mut scratch);
        let mut discarded = T::zero();
        let values = buf
            .iter()
            .map(|c| {
                let im = abs(c.im);
                if im > discarded {
                    discarded = im;
                }
                c.re
            })
            .collect();
        RealProjection {
            values,
            discarded_imaginary: discarded,
        }
    }

    pub fn to_spectral(&self, field: &SpectralField<T>) -> Result<SpectralField<T>> {
        self.check_grid(field)?;
        let values = field.values()?;
        SpectralField::spectral(self.grid.clone(), self.forward_real(values))
    }

    pub fn to_physical(&self, field: &SpectralField<T>) -> Result<SpectralField<T>> {
        Ok(self.to_physical_projected(field)?.0)
    }

    /// Like [`Transform::to_physical`], also reporting the discarded imaginary magnitude.
    pub fn to_physical_projected(&self, field: &SpectralField<T>) -> Result<(SpectralField<T>, T)> {
        self.check_grid(field)?;
        let projection = self.inverse_real(field.coefficients()?);
        Ok((
            SpectralField::physical(self.grid.clone(), projection.values)?,
            projection.discarded_imaginary,
        ))
    }

    fn ensure_spectral(&self, field: &SpectralField<T>) -> Result<Vec<Complex<T>>> {
        self.check_grid(field)?;
        match field.representation() {
            Representation::Spectral => Ok(field.coefficients()?.to_vec()),
            Representation::Physical => Ok(self.forward_real(field.values()?)),
        }
    }

    /// `order`-th derivative; physical input is transformed first.
    pub fn derivative(&self, field: &SpectralField<T>, order: u32) -> Result<SpectralField<T>> {
        let mut coeffs = self.ensure_spectral(field)?;
        apply_derivative(&mut coeffs, self.grid.wavenumbers(), order);
        SpectralField::spectral(self.grid.clone(), coeffs)
    }

    /// Zero-mean antiderivative with the Nyquist mode discarded.
    pub fn antiderivative(&self, field: &SpectralField<T>) -> Result<SpectralField<T>> {
        let mut coeffs = self.ensure_spectral(field)?;
        apply_antiderivative(&mut coeffs, self.grid.wavenumbers());
        SpectralField::spectral(self.grid.clone(), coeffs)
    }

    fn check_grid(&self, field: &SpectralField<T>) -> Result<()> {
        if !Arc::ptr_eq(&self.grid, field.grid()) && **field.grid() != *self.grid {
            return Err(Error::GridMismatch(
                "field and transform are bound to different grids".into(),
            ));
        }
        Ok(())
    }
}

/// `(i k)^order` as a complex multiplier.
pub fn ik_power<T: Real>(k: T, order: u32) -> Complex<T> {
    Complex::new(T::zero(), k).powu(order)
}

/// Multiplies coefficient `j` by `(i k_j)^order`.
pub fn apply_derivative<T: Real>(coeffs: &mut [Complex<T>], wavenumbers: &[T], order: u32) {
    for (c, &k) in coeffs.iter_mut().zip(wavenumbers) {
        *c = *c * ik_power(k, order);
    }
}

/// Divides coefficient `j` by `i k_j`, zeroing every mode with `k_j = 0`
/// (the mean and the Nyquist slot).
pub fn apply_antiderivative<T: Real>(coeffs: &mut [Complex<T>], wavenumbers: &[T]) {
    for (c, &k) in coeffs.iter_mut().zip(wavenumbers) {
        if k == T::zero() {
            *c = Complex::zero();
        } else {
            // c / (i k) = -i c / k
            *c = Complex::new(c.im / k, -c.re / k);
        }
    }
}

/// Projects a spectrum onto exact conjugate symmetry `c_{n-j} = conj(c_j)`.
pub fn symmetrize<T: Real>(coeffs: &mut [Complex<T>]) {
    let n = coeffs.len();
    let half = lit::<T>(0.5);
    coeffs[0].im = T::zero();
    coeffs[n / 2].im = T::zero();
    for j in 1..n / 2 {
        let avg = (coeffs[j] + coeffs[n - j].conj()).scale(half);
        coeffs[j] = avg;
        coeffs[n - j] = avg.conj();
    }
}

/// Zeroes the modes removed by the 2/3 rule.
pub fn apply_mask<T: Real>(coeffs: &mut [Complex<T>], mask: &[bool]) {
    for (c, &keep) in coeffs.iter_mut().zip(mask) {
        if !keep {
            *c = Complex::zero();
        }
    }
}
