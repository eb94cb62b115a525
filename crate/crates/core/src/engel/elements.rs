//! The elements `w_n`, `w̄_n`, `z_n`, `z_n⁻¹` and `v_n`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::{product, FreePoly};
use super::scalar::{ModP, Scalar, P61};
use super::EngelError;

pub const W_BOUND: usize = 6;
pub const Z_BOUND: usize = 5;
pub const V_BOUND: usize = 4;

fn check(what: &'static str, n: usize, min: usize, bound: usize) -> Result<(), EngelError> {
    if n < min {
        Err(EngelError::IndexTooSmall { what, n, min })
    } else if n > bound {
        Err(EngelError::TooLarge { what, n, bound })
    } else {
        Ok(())
    }
}

fn one_plus<C: Scalar>(x: &FreePoly<C>) -> FreePoly<C> {
    &FreePoly::one() + x
}

/// `1 + b` and its inverse `1 - b + b²`.
fn unit_b<C: Scalar>() -> (FreePoly<C>, FreePoly<C>) {
    let b = FreePoly::b();
    let bb = &b * &b;
    (one_plus(&b), &(&FreePoly::one() - &b) + &bb)
}

fn w_pair<C: Scalar>(n: usize) -> (FreePoly<C>, FreePoly<C>) {
    let b = FreePoly::<C>::b();
    let b2_minus_b = &(&b * &b) - &b;
    let mut w = FreePoly::a();
    let mut wbar = -FreePoly::a();
    for _ in 1..n {
        let next = product(&[&w, &b, &wbar]);
        wbar = product(&[&w, &b2_minus_b, &wbar]);
        w = next;
    }
    (w, wbar)
}

/// `w_1 = a`, `w_{n+1} = w_n b w̄_n`; the image of `W_n` under
/// `A ↦ a`, `B ↦ b`, `A′ ↦ -a`, `B′ ↦ b² - b`.
pub fn compute_w<C: Scalar>(n: usize) -> Result<FreePoly<C>, EngelError> {
    check("w", n, 1, W_BOUND)?;
    Ok(w_pair(n).0)
}

/// `w̄_1 = -a`, `w̄_{n+1} = w_n (b² - b) w̄_n`.
pub fn compute_wbar<C: Scalar>(n: usize) -> Result<FreePoly<C>, EngelError> {
    check("wbar", n, 1, W_BOUND)?;
    Ok(w_pair(n).1)
}

fn z_pair<C: Scalar>(n: usize) -> (FreePoly<C>, FreePoly<C>) {
    let a = FreePoly::<C>::a();
    let (ub, ub_inv) = unit_b::<C>();
    let (ua, ua_inv) = (one_plus(&a), &FreePoly::one() - &a);
    let mut z = product(&[&ua, &ub, &ua_inv]);
    let mut z_inv = product(&[&ua, &ub_inv, &ua_inv]);
    for _ in 2..n {
        let z_ub = &z * &ub;
        let z_ub_inv = &z * &ub_inv;
        (z, z_inv) = (&z_ub * &z_inv, &z_ub_inv * &z_inv);
    }
    (z, z_inv)
}

/// `z_2 = (1+a)(1+b)(1-a)`, `z_{n+1} = z_n (1+b) z_n⁻¹`.
pub fn compute_z<C: Scalar>(n: usize) -> Result<FreePoly<C>, EngelError> {
    check("z", n, 2, Z_BOUND)?;
    Ok(z_pair(n).0)
}

/// `z_2⁻¹ = (1+a)(1-b+b²)(1-a)`, `z_{n+1}⁻¹ = z_n (1-b+b²) z_n⁻¹`.
pub fn compute_z_inverse<C: Scalar>(n: usize) -> Result<FreePoly<C>, EngelError> {
    check("zinv", n, 2, Z_BOUND)?;
    Ok(z_pair(n).1)
}

fn v_pair<C: Scalar>(n: usize) -> (FreePoly<C>, FreePoly<C>) {
    let a = FreePoly::<C>::a();
    let (ub, ub_inv) = unit_b::<C>();
    let (ua, ua_inv) = (one_plus(&a), &FreePoly::one() - &a);
    let mut v = product(&[&ua, &ub, &ua_inv, &ub_inv]);
    let mut v_inv = product(&[&ub, &ua, &ub_inv, &ua_inv]);
    for _ in 1..n {
        let next = product(&[&v, &ub, &v_inv, &ub_inv]);
        v_inv = product(&[&ub, &v, &ub_inv, &v_inv]);
        v = next;
    }
    (v, v_inv)
}

/// The left-normed commutator `v_1 = [1+a, 1+b]`, `v_{n+1} = [v_n, 1+b]`,
/// with `[x, y] = x y x⁻¹ y⁻¹`.
pub fn compute_v<C: Scalar>(n: usize) -> Result<FreePoly<C>, EngelError> {
    check("v", n, 1, V_BOUND)?;
    Ok(v_pair(n).0)
}

pub fn compute_v_inverse<C: Scalar>(n: usize) -> Result<FreePoly<C>, EngelError> {
    check("vinv", n, 1, V_BOUND)?;
    Ok(v_pair(n).1)
}

/// How `v_n ≠ 1` was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessMethod {
    /// Exact expansion; `term` is the first nonconstant term of `v_n`.
    Expansion { terms: usize, term: String },
    /// Image under `a ↦ A`, `b ↦ B` with `A² = B³ = 0` in `dim × dim`
    /// matrices over `F_p`, `p = 2^61 - 1`. `v_n` has integer coefficients,
    /// so an image different from the identity rules out `v_n = 1`.
    MatrixImage { dim: usize, seed: u64, entry: (usize, usize), value: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngelWitness {
    pub n: usize,
    pub nontrivial: bool,
    pub method: WitnessMethod,
}

/// Seeds tried before giving up on a matrix image.
const WITNESS_SEEDS: u64 = 64;
const WITNESS_DIM: usize = 4;
pub const WITNESS_BOUND: usize = 4096;

/// Decides whether `v_n ≠ 1`: by expansion up to [`V_BOUND`], by a matrix
/// image above it. `nontrivial == false` means no image separated `v_n` from 1,
/// which does not prove `v_n = 1`.
pub fn engel_witness(n: usize) -> Result<EngelWitness, EngelError> {
    check("v", n, 1, WITNESS_BOUND)?;
    if n <= V_BOUND {
        let v = compute_v::<num_rational::BigRational>(n)?;
        let first = v.terms().find(|(m, _)| !m.is_one());
        let term = first.map_or_else(String::new, |(m, c)| format!("{c} {m}"));
        return Ok(EngelWitness {
            n,
            nontrivial: !v.is_one(),
            method: WitnessMethod::Expansion { terms: v.len(), term },
        });
    }
    for seed in 0..WITNESS_SEEDS {
        let (a, b) = nilpotent_pair(seed);
        let v = matrix_v(&a, &b, n);
        if let Some((i, j)) = v.first_difference(&Mat::identity(WITNESS_DIM)) {
            return Ok(EngelWitness {
                n,
                nontrivial: true,
                method: WitnessMethod::MatrixImage { dim: WITNESS_DIM, seed, entry: (i, j), value: v.get(i, j).value() },
            });
        }
    }
    Ok(EngelWitness {
        n,
        nontrivial: false,
        method: WitnessMethod::MatrixImage { dim: WITNESS_DIM, seed: WITNESS_SEEDS, entry: (0, 0), value: 1 },
    })
}

type Fp = ModP<P61>;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Mat {
    n: usize,
    data: Vec<Fp>,
}

impl Mat {
    fn zero(n: usize) -> Self {
        Mat { n, data: vec![Fp::zero(); n * n] }
    }

    fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = Fp::one();
        }
        m
    }

    fn get(&self, i: usize, j: usize) -> Fp {
        self.data[i * self.n + j]
    }

    fn mul(&self, o: &Mat) -> Mat {
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + x * o.get(k, j);
                }
            }
        }
        out
    }

    fn add(&self, o: &Mat) -> Mat {
        Mat { n: self.n, data: self.data.iter().zip(&o.data).map(|(x, y)| *x + *y).collect() }
    }

    fn sub(&self, o: &Mat) -> Mat {
        Mat { n: self.n, data: self.data.iter().zip(&o.data).map(|(x, y)| *x - *y).collect() }
    }

    fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn first_difference(&self, o: &Mat) -> Option<(usize, usize)> {
        let k = self.data.iter().zip(&o.data).position(|(x, y)| x != y)?;
        Some((k / self.n, k % self.n))
    }

    /// Gauss-Jordan inverse; `None` if singular.
    fn inverse(&self) -> Option<Mat> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Mat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            for j in 0..n {
                a.data.swap(col * n + j, pivot * n + j);
                inv.data.swap(col * n + j, pivot * n + j);
            }
            let s = a.get(col, col).inverse().expect("nonzero pivot");
            for j in 0..n {
                a.data[col * n + j] = a.data[col * n + j] * s;
                inv.data[col * n + j] = inv.data[col * n + j] * s;
            }
            for r in 0..n {
                let f = a.get(r, col);
                if r == col || f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.data[r * n + j] = a.data[r * n + j] - f * a.get(col, j);
                    inv.data[r * n + j] = inv.data[r * n + j] - f * inv.get(col, j);
                }
            }
        }
        Some(inv)
    }
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> (Mat, Mat) {
    loop {
        let m = Mat { n, data: (0..n * n).map(|_| Fp::new(rng.gen_range(0..P61))).collect() };
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}

/// Conjugates of a rank-one square-zero matrix and of a 3-step nilpotent
/// Jordan block.
fn nilpotent_pair(seed: u64) -> (Mat, Mat) {
    let n = WITNESS_DIM;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ea = Mat::zero(n);
    ea.data[1] = Fp::one();
    let mut jb = Mat::zero(n);
    jb.data[1] = Fp::one();
    jb.data[n + 2] = Fp::one();
    let (s, s_inv) = random_invertible(&mut rng, n);
    let (t, t_inv) = random_invertible(&mut rng, n);
    let a = s.mul(&ea).mul(&s_inv);
    let b = t.mul(&jb).mul(&t_inv);
    debug_assert!(a.mul(&a).is_zero() && b.mul(&b).mul(&b).is_zero());
    (a, b)
}

fn matrix_v(a: &Mat, b: &Mat, n: usize) -> Mat {
    let id = Mat::identity(a.n);
    let (ua, ua_inv) = (id.add(a), id.sub(a));
    let (ub, ub_inv) = (id.add(b), id.sub(b).add(&b.mul(b)));
    let mut v = ua.mul(&ub).mul(&ua_inv).mul(&ub_inv);
    let mut v_inv = ub.mul(&ua).mul(&ub_inv).mul(&ua_inv);
    for _ in 1..n {
        let next = v.mul(&ub).mul(&v_inv).mul(&ub_inv);
        v_inv = ub.mul(&v).mul(&ub_inv).mul(&v_inv);
        v = next;
    }
    v
}
