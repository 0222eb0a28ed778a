//! Random structures with known answers, for cross-checking the radical
//! computations. Each generator builds an algebra from pieces whose radical is
//! known by construction and then hides the construction behind a random
//! change of basis.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::exactla::{q, unit_vector, zero_vector, Matrix, Scalar, Subspace, Vector};
use crate::frobalg::FrobeniusAlgebra;
use crate::leibniz::LeibnizAlgebra;

/// Random invertible integer matrix with small entries.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, n);
        if !m.determinant().expect("square").is_zero() {
            return m;
        }
    }
}

fn random_matrix<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let rows = (0..n).map(|_| (0..n).map(|_| q(rng.gen_range(-2..=2))).collect()).collect();
    Matrix::from_rows(rows, n).expect("square")
}

/// Subspace expressed in the new coordinates after `change_basis(p)`.
pub fn transport(s: &Subspace, p: &Matrix) -> Subspace {
    s.image_under(&p.inverse().expect("invertible")).expect("shape")
}

/// Coefficients of `Π (x − r)^m`, lowest degree first.
fn poly_from_roots(roots: &[(i64, usize)]) -> Vec<Scalar> {
    let mut c = vec![q(1)];
    for &(r, m) in roots {
        for _ in 0..m {
            let mut next = vec![q(0); c.len() + 1];
            for (i, x) in c.iter().enumerate() {
                next[i + 1] += x;
                next[i] -= x * q(r);
            }
            c = next;
        }
    }
    c
}

/// Commutative algebra with its nilradical known by construction.
#[derive(Debug, Clone)]
pub struct PlantedCommutative {
    pub algebra: FrobeniusAlgebra,
    pub radical: Subspace,
    pub description: String,
}

/// `Q[x]/(f)` with `f = Π (x − r_i)^{m_i}`; the radical is generated by `Π (x − r_i)`.
fn planted_factor<R: Rng>(rng: &mut R, budget: usize) -> (FrobeniusAlgebra, Vec<Vector>, String) {
    let mut pool: Vec<i64> = (-3..=3).collect();
    pool.shuffle(rng);
    let mut roots = Vec::new();
    let mut deg = 0;
    for r in pool {
        if deg >= budget {
            break;
        }
        let m = rng.gen_range(1..=(budget - deg).min(3));
        roots.push((r, m));
        deg += m;
        if rng.gen_bool(0.5) {
            break;
        }
    }
    let f = poly_from_roots(&roots);
    let a = FrobeniusAlgebra::polynomial_quotient(&f[..deg]);
    let g = poly_from_roots(&roots.iter().map(|&(r, _)| (r, 1)).collect::<Vec<_>>());
    let mut gv = zero_vector(deg);
    for (i, c) in g.iter().enumerate() {
        if i < deg {
            gv[i] = c.clone();
        } else if !c.is_zero() {
            // g has degree deg only when f is squarefree, in which case g ≡ 0 mod f
            gv = zero_vector(deg);
        }
    }
    let x = unit_vector(deg, 1.min(deg - 1));
    let mut gens = Vec::with_capacity(deg);
    let mut cur = gv;
    for _ in 0..deg {
        gens.push(cur.clone());
        cur = if deg > 1 { a.mul(&cur, &x) } else { zero_vector(deg) };
    }
    (a, gens, format!("{roots:?}"))
}

pub fn random_commutative<R: Rng>(rng: &mut R, max_dim: usize) -> PlantedCommutative {
    let factors = if max_dim >= 2 && rng.gen_bool(0.4) { 2 } else { 1 };
    let mut algebra: Option<FrobeniusAlgebra> = None;
    let mut gens: Vec<Vector> = Vec::new();
    let mut desc = Vec::new();
    let mut left = max_dim;
    for k in 0..factors {
        let budget = if k + 1 == factors { rng.gen_range(1..=left) } else { rng.gen_range(1..left) };
        left -= budget;
        let (a, g, d) = planted_factor(rng, budget);
        desc.push(d);
        algebra = Some(match algebra {
            None => {
                gens = g;
                a
            }
            Some(prev) => {
                let n = prev.dim();
                let m = a.dim();
                let mut out: Vec<Vector> = gens
                    .iter()
                    .map(|v| v.iter().cloned().chain(std::iter::repeat(q(0)).take(m)).collect())
                    .collect();
                out.extend(g.iter().map(|v| std::iter::repeat(q(0)).take(n).chain(v.iter().cloned()).collect()));
                gens = out;
                prev.direct_product(&a)
            }
        });
    }
    let algebra = algebra.expect("at least one factor");
    let n = algebra.dim();
    let radical = Subspace::span(n, &gens).expect("shape");
    let p = random_invertible(rng, n);
    PlantedCommutative {
        algebra: algebra.change_basis(&p).expect("invertible"),
        radical: transport(&radical, &p),
        description: desc.join(" x "),
    }
}

/// Matrices of `e, f, h` on the irreducible sl2-module of dimension `n + 1`.
pub fn sl2_irrep(n: usize) -> [Matrix; 3] {
    let d = n + 1;
    let ni = n as i64;
    let e = Matrix::from_fn(d, d, |r, c| if c == r + 1 { q(c as i64 * (ni - c as i64 + 1)) } else { q(0) });
    let f = Matrix::from_fn(d, d, |r, c| if r == c + 1 { q(1) } else { q(0) });
    let h = Matrix::from_fn(d, d, |r, c| if r == c { q(ni - 2 * r as i64) } else { q(0) });
    [e, f, h]
}

/// Block sum of sl2 representations given by their highest weights.
pub fn sl2_module(weights: &[usize]) -> Vec<Matrix> {
    let d: usize = weights.iter().map(|w| w + 1).sum();
    (0..3)
        .map(|g| {
            let mut m = Matrix::zeros(d, d);
            let mut off = 0;
            for &w in weights {
                let block = &sl2_irrep(w)[g];
                for r in 0..=w {
                    for c in 0..=w {
                        m.set(off + r, off + c, block.get(r, c).clone());
                    }
                }
                off += w + 1;
            }
            m
        })
        .collect()
}

/// Lie algebra with its solvable radical known by construction.
#[derive(Debug, Clone)]
pub struct PlantedLie {
    pub algebra: LeibnizAlgebra,
    pub radical: Subspace,
    /// Dimension of the semisimple part.
    pub levi_dim: usize,
    pub description: String,
}

/// `Q ⋉_D Q^k` with `D` random: solvable for every `D`.
fn almost_abelian<R: Rng>(rng: &mut R, k: usize) -> LeibnizAlgebra {
    let d = random_matrix(rng, k);
    LeibnizAlgebra::abelian(1).semidirect(&[d]).expect("one-dimensional action")
}

pub fn random_lie<R: Rng>(rng: &mut R, max_dim: usize) -> PlantedLie {
    let choice = rng.gen_range(0..6);
    let (algebra, levi_dim, description) = match choice {
        0 => {
            let k = rng.gen_range(1..=max_dim);
            (LeibnizAlgebra::abelian(k), 0, format!("abelian({k})"))
        }
        1 => {
            let k = rng.gen_range(1..max_dim.max(2));
            (almost_abelian(rng, k), 0, format!("almost abelian(1+{k})"))
        }
        2 => (LeibnizAlgebra::sl2(), 3, "sl2".into()),
        3 if max_dim >= 4 => {
            let weights: Vec<usize> = match rng.gen_range(0..3) {
                0 => vec![1],
                1 => vec![0; max_dim - 3],
                _ => vec![0],
            };
            (
                LeibnizAlgebra::sl2().semidirect(&sl2_module(&weights)).expect("module"),
                3,
                format!("sl2 x| V{weights:?}"),
            )
        }
        4 if max_dim >= 5 => {
            let r = almost_abelian(rng, max_dim - 4);
            (LeibnizAlgebra::sl2().direct_sum(&r), 3, "sl2 + almost abelian".into())
        }
        _ => {
            let k = rng.gen_range(1..max_dim.max(2));
            let a = almost_abelian(rng, k);
            (a, 0, format!("almost abelian(1+{k})"))
        }
    };
    let n = algebra.dim();
    let radical = Subspace::span(n, &(levi_dim..n).map(|i| unit_vector(n, i)).collect::<Vec<_>>()).expect("shape");
    let p = random_invertible(rng, n);
    PlantedLie {
        algebra: algebra.change_basis(&p).expect("invertible"),
        radical: transport(&radical, &p),
        levi_dim,
        description,
    }
}

/// `sl2 ⋉ V` for a random module `V` of dimension at most `max_module`,
/// optionally plus an almost abelian summand, in a random basis.
pub fn random_semidirect<R: Rng>(rng: &mut R, max_module: usize) -> PlantedLie {
    let mut weights = Vec::new();
    let mut left = max_module.max(1);
    while left > 0 {
        let w = rng.gen_range(0..left.min(4));
        weights.push(w);
        left -= w + 1;
        if rng.gen_bool(0.4) {
            break;
        }
    }
    let mut algebra = LeibnizAlgebra::sl2().semidirect(&sl2_module(&weights)).expect("module");
    let mut description = format!("sl2 x| V{weights:?}");
    if rng.gen_bool(0.3) {
        algebra = algebra.direct_sum(&almost_abelian(rng, 1));
        description.push_str(" + almost abelian(1+1)");
    }
    let n = algebra.dim();
    let radical = Subspace::span(n, &(3..n).map(|i| unit_vector(n, i)).collect::<Vec<_>>()).expect("shape");
    let p = random_invertible(rng, n);
    PlantedLie {
        algebra: algebra.change_basis(&p).expect("invertible"),
        radical: transport(&radical, &p),
        levi_dim: 3,
        description,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn irreps_are_representations() {
        for n in 0..4 {
            let alg = LeibnizAlgebra::sl2().semidirect(&sl2_irrep(n)).unwrap();
            assert!(alg.is_lie());
        }
    }

    #[test]
    fn generators_respect_dimension_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let c = random_commutative(&mut rng, 6);
            assert!(c.algebra.dim() <= 6);
            let l = random_lie(&mut rng, 5);
            assert!(l.algebra.dim() <= 5, "{}", l.description);
            assert!(l.algebra.is_lie());
        }
    }
}
