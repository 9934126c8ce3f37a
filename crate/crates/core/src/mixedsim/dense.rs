use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Largest register the dense mode will allocate (a 1024 x 1024 matrix).
pub const MAX_DENSE_QUBITS: usize = 10;
/// Tolerance for accepting input matrices as unitary.
pub const INPUT_TOL: f64 = 1e-12;
/// Tolerance for trace and invariance post-conditions.
pub const OUTPUT_TOL: f64 = 1e-10;

/// `max |U†U - I|` over entries.
pub fn unitarity_deviation(u: &DMatrix<Complex64>) -> f64 {
    if u.nrows() != u.ncols() {
        return f64::INFINITY;
    }
    let prod = u.adjoint() * u;
    let id = DMatrix::<Complex64>::identity(u.nrows(), u.ncols());
    (prod - id).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Haar-random `dim x dim` unitary: QR of a complex Gaussian matrix with
/// the phases of R's diagonal moved into Q.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Applies `u` (on the qubits `targets`, 0-based, first target most
/// significant in `u`'s index) to the row index of `m`, in place.
pub(crate) fn apply_to_rows(
    m: &mut DMatrix<Complex64>,
    u: &DMatrix<Complex64>,
    targets: &[usize],
    n: usize,
) {
    let t = targets.len();
    let local = 1usize << t;
    let masks: Vec<usize> = targets.iter().map(|&q| 1usize << (n - 1 - q)).collect();
    let target_mask: usize = masks.iter().sum();
    // Row index for base string `base` (target bits clear) and local index `l`.
    let row_of = |base: usize, l: usize| -> usize {
        masks
            .iter()
            .enumerate()
            .filter(|(j, _)| l >> (t - 1 - j) & 1 == 1)
            .fold(base, |acc, (_, &m)| acc | m)
    };
    let mut buf = vec![Complex64::new(0.0, 0.0); local];
    for col in 0..m.ncols() {
        for base in (0..1usize << n).filter(|b| b & target_mask == 0) {
            for (l, slot) in buf.iter_mut().enumerate() {
                *slot = m[(row_of(base, l), col)];
            }
            for l in 0..local {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, v) in buf.iter().enumerate() {
                    acc += u[(l, j)] * v;
                }
                m[(row_of(base, l), col)] = acc;
            }
        }
    }
}

/// `ρ -> U ρ U†` with `U` acting on `targets`.
pub(crate) fn conjugate_local(
    rho: &DMatrix<Complex64>,
    u: &DMatrix<Complex64>,
    targets: &[usize],
    n: usize,
) -> DMatrix<Complex64> {
    let mut a = rho.clone();
    apply_to_rows(&mut a, u, targets, n);
    let mut b = a.adjoint();
    apply_to_rows(&mut b, u, targets, n);
    b.adjoint()
}
