//! Exact mode calculus on the lattice Fock space `M(1) ⊗ Q[L]`.
//!
//! Heisenberg generators are the lattice basis directions `a_i` with
//! `[a_i(m), a_j(n)] = m (e_i, e_j) δ_{m+n,0}`. Vertex operators of
//! exponentials follow
//!
//! `Y(e^α, z) = exp(Σ_{n≥1} α(−n) z^n / n) · exp(−Σ_{n≥1} α(n) z^{−n} / n) · e_α z^{α(0)}`,
//!
//! with `e_α e^β = ε(α, β) e^{α+β}`, so that `e^α(−(α,β)−1) e^β = ε(α, β) e^{α+β}`.
//! Modes of composite states come from the iterate formula
//!
//! `(u(p)b)(q) = Σ_{i≥0} (−1)^i C(p,i) [u(p−i) b(q+i) − (−1)^p b(p+q−i) u(i)]`
//!
//! applied with `u = a_j(−1)1`, peeling one Heisenberg factor at a time.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactla::{format_scalar, q, Literal, LinAlgError, Scalar, Vector};
use crate::lattice::{build_cocycle, short_vectors, Cocycle, EvenLattice, ShiftDatum};

/// `a_{j1}(−n1)···a_{jr}(−nr) ⊗ e^β`; factors stored as `(n, j)` sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockState {
    pub point: Vec<i64>,
    pub heis: Vec<(u32, usize)>,
}

impl FockState {
    pub fn new(point: Vec<i64>, mut heis: Vec<(u32, usize)>) -> Self {
        heis.sort_unstable();
        FockState { point, heis }
    }

    pub fn vacuum(rank: usize) -> Self {
        FockState { point: vec![0; rank], heis: Vec::new() }
    }

    pub fn exponential(point: Vec<i64>) -> Self {
        FockState { point, heis: Vec::new() }
    }

    /// Sum of the mode numbers `n1 + ... + nr`.
    pub fn degree(&self) -> u32 {
        self.heis.iter().map(|(n, _)| n).sum()
    }

    pub fn max_mode(&self) -> u32 {
        self.heis.iter().map(|(n, _)| *n).max().unwrap_or(0)
    }

    pub fn with_factor(&self, n: u32, dir: usize) -> FockState {
        let mut heis = self.heis.clone();
        let pos = heis.partition_point(|f| *f < (n, dir));
        heis.insert(pos, (n, dir));
        FockState { point: self.point.clone(), heis }
    }

    pub fn without_factor(&self, pos: usize) -> FockState {
        let mut heis = self.heis.clone();
        heis.remove(pos);
        FockState { point: self.point.clone(), heis }
    }

    pub fn with_point(&self, point: Vec<i64>) -> FockState {
        FockState { point, heis: self.heis.clone() }
    }
}

/// Finite linear combination of [`FockState`]s; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FockVector {
    terms: BTreeMap<FockState, Scalar>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn basis(state: FockState) -> Self {
        Self::term(state, Scalar::one())
    }

    pub fn term(state: FockState, c: Scalar) -> Self {
        let mut v = FockVector::zero();
        v.add_term(state, c);
        v
    }

    pub fn vacuum(rank: usize) -> Self {
        Self::basis(FockState::vacuum(rank))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FockState, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &FockState) -> Scalar {
        self.terms.get(s).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, state: FockState, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(state) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Scalar, other: &FockVector) {
        if c.is_zero() {
            return;
        }
        for (s, x) in &other.terms {
            let entry = self.terms.entry(s.clone()).or_insert_with(Scalar::zero);
            *entry += c * x;
            if entry.is_zero() {
                self.terms.remove(s);
            }
        }
    }

    pub fn scaled(&self, c: &Scalar) -> FockVector {
        if c.is_zero() {
            return FockVector::zero();
        }
        FockVector { terms: self.terms.iter().map(|(s, x)| (s.clone(), x * c)).collect() }
    }

    pub fn plus(&self, other: &FockVector) -> FockVector {
        let mut r = self.clone();
        r.add_scaled(&Scalar::one(), other);
        r
    }

    pub fn minus(&self, other: &FockVector) -> FockVector {
        let mut r = self.clone();
        r.add_scaled(&-Scalar::one(), other);
        r
    }

    pub fn states(&self) -> impl Iterator<Item = &FockState> {
        self.terms.keys()
    }

    /// Coordinates in an explicit list of basis states; `None` if a state outside the list occurs.
    pub fn coordinates(&self, basis: &[FockState]) -> Option<Vector> {
        let mut out = vec![Scalar::zero(); basis.len()];
        for (s, c) in &self.terms {
            let k = basis.iter().position(|b| b == s)?;
            out[k] = c.clone();
        }
        Some(out)
    }

    pub fn from_coordinates(basis: &[FockState], coords: &[Scalar]) -> FockVector {
        let mut v = FockVector::zero();
        for (s, c) in basis.iter().zip(coords) {
            v.add_term(s.clone(), c.clone());
        }
        v
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    /// `[dir, n]` stands for the factor `a_dir(−n)`.
    heis: Vec<(usize, u32)>,
    point: Vec<i64>,
    coeff: Literal,
}

impl Serialize for FockVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(st, c)| TermJson {
                heis: st.heis.iter().map(|(n, d)| (*d, *n)).collect(),
                point: st.point.clone(),
                coeff: Literal::Str(format_scalar(c)),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FockVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<TermJson>::deserialize(d)?;
        let mut v = FockVector::zero();
        for t in raw {
            if t.heis.iter().any(|(_, n)| *n == 0) {
                return Err(serde::de::Error::custom("Heisenberg factor with mode 0"));
            }
            let c = t.coeff.to_scalar().map_err(serde::de::Error::custom)?;
            v.add_term(FockState::new(t.point, t.heis.iter().map(|(d, n)| (*n, *d)).collect()), c);
        }
        Ok(v)
    }
}

/// Generalized binomial coefficient `C(p, i)` for any integer `p`.
pub fn binomial(p: i64, i: u32) -> Scalar {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..i as i64 {
        num *= BigInt::from(p - k);
        den *= BigInt::from(k + 1);
    }
    Scalar::new(num, den)
}

/// Fock space of an even lattice with its sign cocycle.
#[derive(Debug, Clone)]
pub struct FockSpace {
    lattice: EvenLattice,
    cocycle: Cocycle,
}

impl FockSpace {
    pub fn new(lattice: EvenLattice) -> Self {
        let cocycle = build_cocycle(&lattice);
        FockSpace { lattice, cocycle }
    }

    pub fn lattice(&self) -> &EvenLattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// `L′(0)`-weight: `degree + ½(β, β)`.
    pub fn weight(&self, s: &FockState) -> i64 {
        s.degree() as i64 + self.lattice.inner_int(&s.point, &s.point) / 2
    }

    /// `(γ, e_j)` for every basis direction `j`.
    fn pairings(&self, gamma: &[Scalar]) -> Vec<Scalar> {
        let d = self.rank();
        (0..d)
            .map(|j| (0..d).fold(Scalar::zero(), |acc, i| acc + &gamma[i] * self.lattice.gram().get(i, j)))
            .collect()
    }

    /// `γ(n)` for rational `γ` in lattice coordinates.
    pub fn heis_mode(&self, gamma: &[Scalar], n: i64, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        if n < 0 {
            let m = (-n) as u32;
            for (s, c) in v.iter() {
                for (dir, g) in gamma.iter().enumerate().filter(|(_, g)| !g.is_zero()) {
                    out.add_term(s.with_factor(m, dir), c * g);
                }
            }
        } else if n == 0 {
            for (s, c) in v.iter() {
                let ip = self.lattice.inner_mixed(gamma, &s.point);
                out.add_term(s.clone(), c * ip);
            }
        } else {
            let pair = self.pairings(gamma);
            let m = n as u32;
            for (s, c) in v.iter() {
                for (pos, (k, dir)) in s.heis.iter().enumerate() {
                    if *k == m && !pair[*dir].is_zero() {
                        out.add_term(s.without_factor(pos), c * q(n) * &pair[*dir]);
                    }
                }
            }
        }
        out
    }

    /// `e^α(m)`, the coefficient of `z^{−m−1}` in `Y(e^α, z)`.
    pub fn exp_mode(&self, alpha: &[i64], m: i64, v: &FockVector) -> FockVector {
        let ga: Vector = alpha.iter().map(|&x| q(x)).collect();
        let mut out = FockVector::zero();
        for (s, c) in v.iter() {
            let ab = self.lattice.inner_int(alpha, &s.point);
            let sign = q(self.cocycle.sign(alpha, &s.point));
            let target: Vec<i64> = alpha.iter().zip(&s.point).map(|(x, y)| x + y).collect();
            // annihilation series T_k, k T_k = −Σ_n α(n) T_{k−n}
            let deg = s.degree() as i64;
            let mut ann: Vec<FockVector> = vec![FockVector::basis(s.clone())];
            for k in 1..=deg {
                let mut acc = FockVector::zero();
                for n in 1..=k {
                    acc.add_scaled(&-Scalar::one(), &self.heis_mode(&ga, n, &ann[(k - n) as usize]));
                }
                ann.push(acc.scaled(&Scalar::new(BigInt::one(), BigInt::from(k))));
            }
            for (k, tk) in ann.iter().enumerate() {
                let j = -m - 1 - ab + k as i64;
                if j < 0 || tk.is_zero() {
                    continue;
                }
                // creation series S_j, j S_j = Σ_n α(−n) S_{j−n}
                let mut cre: Vec<FockVector> = vec![tk.clone()];
                for jj in 1..=j {
                    let mut acc = FockVector::zero();
                    for n in 1..=jj {
                        acc.add_scaled(&Scalar::one(), &self.heis_mode(&ga, -n, &cre[(jj - n) as usize]));
                    }
                    cre.push(acc.scaled(&Scalar::new(BigInt::one(), BigInt::from(jj))));
                }
                for (st, x) in cre[j as usize].iter() {
                    out.add_term(st.with_point(target.clone()), c * &sign * x);
                }
            }
        }
        out
    }

    /// Largest `k` with `a(k) w` possibly nonzero for basis states `a`, `w`.
    fn top_mode(&self, a: &FockState, w: &FockState) -> i64 {
        let sum: Vec<i64> = a.point.iter().zip(&w.point).map(|(x, y)| x + y).collect();
        self.weight(a) + self.weight(w) - 1 - self.lattice.inner_int(&sum, &sum) / 2
    }
}

/// Which conformal vector a Virasoro mode refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conformal {
    /// `ω′ = ½ Σ (G⁻¹)_ij a_i(−1) a_j(−1) 1`.
    Standard,
    /// `ω_h = ω′ + h(−2) 1`.
    Shifted,
}

/// Standard and shifted conformal vectors of a shifted lattice theory.
#[derive(Debug, Clone)]
pub struct VirasoroDatum {
    pub omega_prime: FockVector,
    pub shift_h: Vector,
    pub omega_h: FockVector,
}

impl VirasoroDatum {
    pub fn new(s: &ShiftDatum) -> Result<Self, LinAlgError> {
        let d = s.rank();
        let inv = s.lattice().gram().inverse()?;
        let half = Scalar::new(BigInt::one(), BigInt::from(2));
        let mut omega_prime = FockVector::zero();
        for i in 0..d {
            for j in 0..d {
                let st = FockState::new(vec![0; d], vec![(1, i), (1, j)]);
                omega_prime.add_term(st, &half * inv.get(i, j));
            }
        }
        let mut omega_h = omega_prime.clone();
        for (i, x) in s.h().iter().enumerate() {
            omega_h.add_term(FockState::new(vec![0; d], vec![(2, i)]), x.clone());
        }
        Ok(VirasoroDatum { omega_prime, shift_h: s.h().clone(), omega_h })
    }
}

/// Memoizing evaluator for modes of arbitrary Fock states.
#[derive(Debug, Clone)]
pub struct ModeEngine {
    space: FockSpace,
    cache: HashMap<(FockState, i64, FockState), FockVector>,
}

impl ModeEngine {
    pub fn new(lattice: EvenLattice) -> Self {
        ModeEngine { space: FockSpace::new(lattice), cache: HashMap::new() }
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    pub fn heis_mode(&self, gamma: &[Scalar], n: i64, v: &FockVector) -> FockVector {
        self.space.heis_mode(gamma, n, v)
    }

    pub fn exp_mode(&self, alpha: &[i64], m: i64, v: &FockVector) -> FockVector {
        self.space.exp_mode(alpha, m, v)
    }

    /// `a(m) v` for arbitrary `a`.
    pub fn iterate_mode(&mut self, a: &FockVector, m: i64, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for (sa, ca) in a.iter() {
            for (sv, cv) in v.iter() {
                let r = self.state_mode(sa, m, sv);
                out.add_scaled(&(ca * cv), &r);
            }
        }
        out
    }

    fn state_mode(&mut self, a: &FockState, m: i64, w: &FockState) -> FockVector {
        if m > self.space.top_mode(a, w) {
            return FockVector::zero();
        }
        let key = (a.clone(), m, w.clone());
        if let Some(r) = self.cache.get(&key) {
            return r.clone();
        }
        let r = self.state_mode_uncached(a, m, w);
        self.cache.insert(key, r.clone());
        r
    }

    fn state_mode_uncached(&mut self, a: &FockState, m: i64, w: &FockState) -> FockVector {
        let wv = FockVector::basis(w.clone());
        if a.heis.is_empty() {
            return self.space.exp_mode(&a.point, m, &wv);
        }
        let (n, dir) = a.heis[0];
        let b = a.without_factor(0);
        let p = -(n as i64);
        let mut e = vec![Scalar::zero(); self.rank()];
        e[dir] = Scalar::one();
        let top_b = self.space.top_mode(&b, w);
        let last = (top_b - m).max(w.max_mode() as i64).max(0) as u32;
        let parity = if p % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        let mut out = FockVector::zero();
        for i in 0..=last {
            let coeff = binomial(p, i) * if i % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            let ii = i as i64;
            if m + ii <= top_b {
                let inner = self.state_mode(&b, m + ii, w);
                out.add_scaled(&coeff, &self.space.heis_mode(&e, p - ii, &inner));
            }
            let uw = self.space.heis_mode(&e, ii, &wv);
            if !uw.is_zero() {
                let mut second = FockVector::zero();
                for (s, c) in uw.iter() {
                    second.add_scaled(c, &self.state_mode(&b, p + m - ii, s));
                }
                out.add_scaled(&-(&coeff * &parity), &second);
            }
        }
        out
    }

    /// `L′(n)` or `L_h(n) = L′(n) − (n+1) h(n)`.
    pub fn virasoro_mode(&mut self, vd: &VirasoroDatum, n: i64, v: &FockVector, which: Conformal) -> FockVector {
        let base = self.iterate_mode(&vd.omega_prime, n + 1, v);
        match which {
            Conformal::Standard => base,
            Conformal::Shifted => {
                let hn = self.space.heis_mode(&vd.shift_h, n, v);
                base.minus(&hn.scaled(&q(n + 1)))
            }
        }
    }

    /// `ω_h(n+1)`, computed through the iterate recursion on `ω_h` itself.
    pub fn shifted_virasoro_direct(&mut self, vd: &VirasoroDatum, n: i64, v: &FockVector) -> FockVector {
        self.iterate_mode(&vd.omega_h, n + 1, v)
    }

    /// `c` with `ω(3) ω = (c/2) 1`.
    pub fn central_charge(&mut self, omega: &FockVector) -> Scalar {
        let r = self.iterate_mode(omega, 3, omega);
        r.coefficient(&FockState::vacuum(self.rank())) * q(2)
    }
}

/// A basis state of a shifted weight space with its bigrading.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedState {
    #[serde(serialize_with = "state_ser")]
    pub state: FockState,
    /// `L′(0)` eigenvalue.
    pub conformal_weight: i64,
    /// `h(0)` eigenvalue `(h, β)`.
    pub charge: i64,
}

fn state_ser<S: Serializer>(st: &FockState, s: S) -> Result<S::Ok, S::Error> {
    FockVector::basis(st.clone()).serialize(s)
}

/// All multisets of `(mode, dir)` with mode sum `total`, factors ascending.
pub fn colored_partitions(total: u32, colors: usize) -> Vec<Vec<(u32, usize)>> {
    fn rec(
        rest: u32,
        min: (u32, usize),
        colors: usize,
        cur: &mut Vec<(u32, usize)>,
        out: &mut Vec<Vec<(u32, usize)>>,
    ) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for n in min.0.max(1)..=rest {
            let start = if n == min.0 { min.1 } else { 0 };
            for dir in start..colors {
                cur.push((n, dir));
                rec(rest - n, (n, dir), colors, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(total, (1, 0), colors, &mut Vec::new(), &mut out);
    out
}

/// Basis states of `L_h(0)`-weight `n`, sorted.
pub fn weight_space(s: &ShiftDatum, n: i64) -> Vec<GradedState> {
    let mut out = Vec::new();
    let radius = q(2 * n) + s.h_norm();
    if radius.is_negative() {
        return out;
    }
    for beta in short_vectors(s.lattice(), s.h(), &radius) {
        let rest = n - s.point_weight(&beta);
        if rest < 0 {
            continue;
        }
        let half_norm = s.lattice().inner_int(&beta, &beta) / 2;
        let charge = s.charge(&beta);
        for heis in colored_partitions(rest as u32, s.rank()) {
            out.push(GradedState {
                state: FockState { point: beta.clone(), heis },
                conformal_weight: rest + half_norm,
                charge,
            });
        }
    }
    out.sort_by(|a, b| a.state.cmp(&b.state));
    out
}

/// `dim V_n` for `n = 0..=up_to` from `Σ_β q^{wt β} Π_k (1 − q^k)^{−d}`.
pub fn graded_dimension_series(s: &ShiftDatum, up_to: usize) -> Vec<u64> {
    let d = s.rank();
    // coefficients of Π_k (1 − q^k)^{−d}: d-fold product of the partition series
    let mut part = vec![0u64; up_to + 1];
    part[0] = 1;
    for _ in 0..d {
        for k in 1..=up_to {
            for i in k..=up_to {
                part[i] += part[i - k];
            }
        }
    }
    let mut out = vec![0u64; up_to + 1];
    let radius = q(2 * up_to as i64) + s.h_norm();
    for beta in short_vectors(s.lattice(), s.h(), &radius) {
        let w = s.point_weight(&beta);
        if w < 0 {
            continue;
        }
        for n in w as usize..=up_to {
            out[n] += part[n - w as usize];
        }
    }
    out
}

/// Integer part of a scalar known to be integral.
pub fn as_i64(x: &Scalar) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::qf;

    fn a1_engine() -> ModeEngine {
        ModeEngine::new(EvenLattice::a1())
    }

    fn heis(rank: usize, point: Vec<i64>, factors: &[(u32, usize)]) -> FockVector {
        let _ = rank;
        FockVector::basis(FockState::new(point, factors.to_vec()))
    }

    #[test]
    fn heisenberg_examples() {
        let e = a1_engine();
        let g = vec![q(1)];
        let one = FockVector::vacuum(1);
        let x = e.heis_mode(&g, -1, &one);
        assert_eq!(e.heis_mode(&g, 1, &x), one.scaled(&q(2)));
        let ea = heis(1, vec![3], &[]);
        assert_eq!(e.heis_mode(&g, 0, &ea), ea.scaled(&q(6)));
        let xx = e.heis_mode(&g, -1, &x);
        assert_eq!(e.heis_mode(&g, 1, &xx), x.scaled(&q(4)));
        assert!(e.heis_mode(&g, 2, &xx).is_zero());
    }

    #[test]
    fn exponential_examples() {
        let e = a1_engine();
        let one = FockVector::vacuum(1);
        assert_eq!(e.exp_mode(&[1], -1, &one), heis(1, vec![1], &[]));
        let eb = heis(1, vec![1], &[]);
        // (α, α) = 2: e^α(−3) e^α = e^{2α}, higher modes vanish
        assert_eq!(e.exp_mode(&[1], -3, &eb), heis(1, vec![2], &[]));
        for m in -2..=3 {
            assert!(e.exp_mode(&[1], m, &eb).is_zero());
        }
        let em = heis(1, vec![-1], &[]);
        assert_eq!(e.exp_mode(&[1], 1, &em), one);
        // e^α(0) e^{−α} = α(−1) 1
        assert_eq!(e.exp_mode(&[1], 0, &em), heis(1, vec![0], &[(1, 0)]));
    }

    #[test]
    fn iterate_base_cases() {
        let mut e = a1_engine();
        let x = heis(1, vec![0], &[(1, 0)]);
        let tests = [heis(1, vec![0], &[(1, 0), (2, 0)]), heis(1, vec![-1], &[(1, 0)]), heis(1, vec![1], &[])];
        for v in &tests {
            for n in -3..=3 {
                assert_eq!(e.iterate_mode(&x, n, v), e.heis_mode(&[q(1)], n, v));
            }
            let ea = heis(1, vec![1], &[]);
            for n in -3..=3 {
                assert_eq!(e.iterate_mode(&ea, n, v), e.exp_mode(&[1], n, v));
            }
        }
    }

    #[test]
    fn derivative_state_modes() {
        // (γ(−2)1)(n) = −n γ(n−1)
        let mut e = a1_engine();
        let d = heis(1, vec![0], &[(2, 0)]);
        for st in weight_space(&ShiftDatum::unshifted(EvenLattice::a1()), 2) {
            let v = FockVector::basis(st.state);
            for n in -2..=3 {
                let want = e.heis_mode(&[q(1)], n - 1, &v).scaled(&q(-n));
                assert_eq!(e.iterate_mode(&d, n, &v), want);
            }
        }
    }

    #[test]
    fn virasoro_examples() {
        let s = ShiftDatum::half_root(1);
        let vd = VirasoroDatum::new(&s).unwrap();
        let mut e = ModeEngine::new(s.lattice().clone());
        let one = FockVector::vacuum(1);
        assert!(e.virasoro_mode(&vd, -1, &one, Conformal::Standard).is_zero());
        assert_eq!(e.central_charge(&vd.omega_prime.clone()), q(1));
        assert_eq!(e.central_charge(&vd.omega_h.clone()), q(1) - q(12) * s.h_norm());
        for st in weight_space(&s, 2) {
            let v = FockVector::basis(st.state.clone());
            let l0 = e.virasoro_mode(&vd, 0, &v, Conformal::Shifted);
            assert_eq!(l0, v.scaled(&q(2)));
            let lp = e.virasoro_mode(&vd, 0, &v, Conformal::Standard);
            assert_eq!(lp, v.scaled(&q(st.conformal_weight)));
            for n in -2..=2 {
                assert_eq!(
                    e.virasoro_mode(&vd, n, &v, Conformal::Shifted),
                    e.shifted_virasoro_direct(&vd, n, &v)
                );
            }
        }
        let two = ModeEngine::new(EvenLattice::a1().orthogonal_sum(&EvenLattice::a1()))
            .central_charge(&VirasoroDatum::new(&ShiftDatum::a1_squared_half()).unwrap().omega_prime);
        assert_eq!(two, q(2));
    }

    #[test]
    fn weight_space_examples() {
        let s = ShiftDatum::half_root(1);
        let w0: Vec<FockState> = weight_space(&s, 0).into_iter().map(|g| g.state).collect();
        assert_eq!(w0, vec![FockState::vacuum(1), FockState::exponential(vec![1])]);
        let w1 = weight_space(&s, 1);
        assert_eq!(
            w1.iter().map(|g| g.state.clone()).collect::<Vec<_>>(),
            vec![FockState::new(vec![0], vec![(1, 0)]), FockState::new(vec![1], vec![(1, 0)])]
        );
        assert_eq!((w1[1].conformal_weight, w1[1].charge), (2, 1));
        let s0 = ShiftDatum::unshifted(EvenLattice::a1());
        assert_eq!(weight_space(&s0, 0).len(), 1);
        assert_eq!(weight_space(&s0, 1).len(), 3);
        assert_eq!(graded_dimension_series(&s, 1), vec![2, 2]);
        assert_eq!(graded_dimension_series(&s0, 1), vec![1, 3]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(-1, 3), q(-1));
        assert_eq!(binomial(-2, 2), q(3));
        assert_eq!(binomial(5, 2), q(10));
        assert_eq!(binomial(2, 3), q(0));
        assert_eq!(binomial(0, 0), q(1));
        let _ = qf(1, 2);
    }

    #[test]
    fn vector_json_roundtrip() {
        let v = heis(1, vec![1], &[(1, 0), (2, 0)]).scaled(&qf(-3, 2));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[{"heis":[[0,1],[0,2]],"point":[1],"coeff":"-3/2"}]"#);
        let back: FockVector = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
