//! The induced module `Ind_q(V) = U(L) ⊗_{U(L_q)} V` in its PBW basis
//! `h^i d^j ⊗ v`, where
//!
//! ```text
//! h^i d^j = ⋯ h_{-q-2}^{i_2} h_{-q-1}^{i_1} ⋯ d_{-2}^{j_2} d_{-1}^{j_1}
//! ```
//!
//! Generators act by straightening: a generator is commuted rightwards through
//! the monomial with the bracket until every term is back in normal form, and
//! whatever reaches `V` acts through the `L_q`-module matrices.
//!
//! The action is computed once per `(generator, basis key)` as a map
//! `key' ↦ matrix` (a linear map `V → Ind_q(V)`) and memoized; acting on a
//! vector then only multiplies cached matrices into its coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::algebra::{Generator, LieElement};
use crate::linalg::Matrix;
use crate::lq_module::{LqModuleSpec, VVector};
use crate::multi_index::{pair_compare, MultiIndex};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IndError {
    #[error("the zero vector has no degree")]
    ZeroVector,
    #[error("coefficient has length {0}, module has dimension {1}")]
    DimensionMismatch(usize, usize),
}

/// Basis key `(i, j)`: position `s` of `h` is the exponent of `h_{-q-s}`, position `t` of
/// `d` is the exponent of `d_{-t}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BasisKey {
    pub h: MultiIndex,
    pub d: MultiIndex,
}

impl BasisKey {
    pub fn new(h: MultiIndex, d: MultiIndex) -> Self {
        BasisKey { h, d }
    }

    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn is_vacuum(&self) -> bool {
        self.h.is_zero() && self.d.is_zero()
    }

    pub fn weight(&self) -> u64 {
        self.h.weight() + self.d.weight()
    }

    /// Number of free factors in the monomial.
    pub fn length(&self) -> u64 {
        self.h.length() + self.d.length()
    }

    fn with_h(&self, extra: &MultiIndex) -> Self {
        BasisKey {
            h: self.h.plus(extra),
            d: self.d.clone(),
        }
    }
}

impl fmt::Debug for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.h, self.d)
    }
}

/// An element of `Ind_q(V)` in normal form. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IndVector {
    dim: usize,
    terms: BTreeMap<BasisKey, VVector>,
}

impl IndVector {
    pub fn zero(dim: usize) -> Self {
        IndVector {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(key: BasisKey, v: VVector) -> Self {
        let mut out = Self::zero(v.dim());
        out.add_term(key, &v, &Scalar::one());
        out
    }

    /// `1 ⊗ v`.
    pub fn from_v(v: VVector) -> Self {
        Self::basis(BasisKey::vacuum(), v)
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self, IndError>
    where
        I: IntoIterator<Item = (BasisKey, VVector)>,
    {
        let mut out = Self::zero(dim);
        for (k, v) in terms {
            if v.dim() != dim {
                return Err(IndError::DimensionMismatch(v.dim(), dim));
            }
            out.add_term(k, &v, &Scalar::one());
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
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

    pub fn terms(&self) -> impl Iterator<Item = (&BasisKey, &VVector)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &BasisKey) -> Option<&VVector> {
        self.terms.get(key)
    }

    /// `supp(v)` in storage order.
    pub fn support(&self) -> impl Iterator<Item = &BasisKey> + '_ {
        self.terms.keys()
    }

    pub fn add_term(&mut self, key: BasisKey, v: &VVector, s: &Scalar) {
        if s.is_zero() || v.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(key.clone())
            .or_insert_with(|| VVector::zero(self.dim));
        entry.add_assign_scaled(v, s);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &IndVector, s: &Scalar) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v, s);
        }
    }

    pub fn scale(&self, s: &Scalar) -> IndVector {
        let mut out = IndVector::zero(self.dim);
        out.add_scaled(self, s);
        out
    }

    pub fn minus(&self, other: &IndVector) -> IndVector {
        let mut out = self.clone();
        out.add_scaled(other, &-Scalar::one());
        out
    }

    /// Maximal support element under [`pair_compare`].
    pub fn degree(&self) -> Result<BasisKey, IndError> {
        self.terms
            .keys()
            .max_by(|a, b| pair_compare((&a.h, &a.d), (&b.h, &b.d)))
            .cloned()
            .ok_or(IndError::ZeroVector)
    }

    /// The `V`-component when the vector lies in `1 ⊗ V`.
    pub fn as_v(&self) -> Option<VVector> {
        match self.terms.len() {
            0 => Some(VVector::zero(self.dim)),
            1 => self.terms.get(&BasisKey::vacuum()).cloned(),
            _ => None,
        }
    }

    pub fn max_weight(&self) -> u64 {
        self.terms.keys().map(BasisKey::weight).max().unwrap_or(0)
    }
}

/// A linear map `V → Ind_q(V)`, stored as `key ↦ matrix`.
type Lin = BTreeMap<BasisKey, Matrix>;

fn lin_add(dst: &mut Lin, key: BasisKey, m: Matrix) {
    if m.is_zero() {
        return;
    }
    match dst.get_mut(&key) {
        Some(existing) => {
            *existing = &*existing + &m;
            if existing.is_zero() {
                dst.remove(&key);
            }
        }
        None => {
            dst.insert(key, m);
        }
    }
}

fn lin_add_scaled(dst: &mut Lin, src: &Lin, s: &Scalar, h_shift: &MultiIndex) {
    if s.is_zero() {
        return;
    }
    for (k, m) in src {
        let key = if h_shift.is_zero() {
            k.clone()
        } else {
            k.with_h(h_shift)
        };
        let m = if s.is_one() { m.clone() } else { m.scale(s) };
        lin_add(dst, key, m);
    }
}

/// `Ind_q(V)` for a fixed `L_q`-module, with a memo table for the generator action.
pub struct InducedModule {
    spec: LqModuleSpec,
    q: i64,
    cache: RwLock<HashMap<(Generator, BasisKey), Arc<Lin>>>,
}

impl fmt::Debug for InducedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InducedModule")
            .field("spec", &self.spec)
            .finish_non_exhaustive()
    }
}

impl Clone for InducedModule {
    fn clone(&self) -> Self {
        InducedModule::new(self.spec.clone())
    }
}

impl InducedModule {
    pub fn new(spec: LqModuleSpec) -> Self {
        let q = i64::from(spec.q());
        InducedModule {
            spec,
            q,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &LqModuleSpec {
        &self.spec
    }

    pub fn q(&self) -> u32 {
        self.spec.q()
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    /// `h_n` is a free (PBW) factor iff `n <= -q-1`.
    pub fn is_free_h(&self, n: i64) -> bool {
        n < -self.q
    }

    /// Basis key of the single free generator `g`, if it is one.
    pub fn free_key(&self, g: Generator) -> Option<BasisKey> {
        match g {
            Generator::H(n) if self.is_free_h(n) => Some(BasisKey::new(
                MultiIndex::unit((-self.q - n) as usize),
                MultiIndex::zero(),
            )),
            Generator::D(n) if n <= -1 => Some(BasisKey::new(
                MultiIndex::zero(),
                MultiIndex::unit((-n) as usize),
            )),
            _ => None,
        }
    }

    /// `g · v` in normal form.
    pub fn act(&self, g: Generator, v: &IndVector) -> IndVector {
        let mut out = IndVector::zero(self.dim());
        for (key, coeff) in v.terms() {
            let image = self.apply_key(g, key);
            for (k2, m) in image.iter() {
                let w = VVector(m.mul_vec(coeff.coords()));
                out.add_term(k2.clone(), &w, &Scalar::one());
            }
        }
        out
    }

    /// Linear extension of [`act`](Self::act) to Lie elements.
    pub fn act_element(&self, x: &LieElement, v: &IndVector) -> IndVector {
        let mut out = IndVector::zero(self.dim());
        for (g, s) in x.terms() {
            out.add_scaled(&self.act(g, v), s);
        }
        out
    }

    /// `g_1 g_2 ⋯ g_n · v` (rightmost generator acts first).
    pub fn act_word(&self, word: &[Generator], v: &IndVector) -> IndVector {
        word.iter()
            .rev()
            .fold(v.clone(), |acc, &g| self.act(g, &acc))
    }

    /// Number of memoized `(generator, key)` entries.
    pub fn cache_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    fn apply_key(&self, g: Generator, key: &BasisKey) -> Arc<Lin> {
        let cache_key = (g, key.clone());
        if let Some(hit) = self.cache.read().expect("cache lock").get(&cache_key) {
            return Arc::clone(hit);
        }
        // Computed outside the lock: the recursion re-enters apply_key.
        let value = Arc::new(self.compute_key(g, key));
        let mut guard = self.cache.write().expect("cache lock");
        Arc::clone(guard.entry(cache_key).or_insert(value))
    }

    fn apply_lin(&self, g: Generator, lin: &Lin) -> Lin {
        let mut out = Lin::new();
        for (key, m) in lin {
            for (k2, n) in self.apply_key(g, key).iter() {
                lin_add(&mut out, k2.clone(), n * m);
            }
        }
        out
    }

    fn identity_at(&self, key: BasisKey) -> Lin {
        Lin::from([(key, Matrix::identity(self.dim()))])
    }

    fn subalgebra_action(&self, g: Generator) -> Lin {
        match self.spec.matrix(g).expect("generator lies in L_q") {
            Some(m) => Lin::from([(BasisKey::vacuum(), m)]),
            None => Lin::new(),
        }
    }

    fn compute_key(&self, g: Generator, key: &BasisKey) -> Lin {
        let q = self.q;
        match g {
            Generator::C => {
                let lambda = self.spec.c_scalar();
                if lambda.is_zero() {
                    Lin::new()
                } else {
                    Lin::from([(key.clone(), Matrix::scalar(self.dim(), lambda.clone()))])
                }
            }
            Generator::H(n) if self.is_free_h(n) => self.identity_at(BasisKey::new(
                key.h.plus_unit((-q - n) as usize),
                key.d.clone(),
            )),
            Generator::H(n) => {
                // h's commute, so h_n passes h^i untouched.
                let inner = self.h_on_d(n, &key.d);
                let mut out = Lin::new();
                lin_add_scaled(&mut out, &inner, &Scalar::one(), &key.h);
                out
            }
            Generator::D(n) => {
                let mut out = Lin::new();
                // [d_n, h_{-q-s}] = (q+s) h_{n-q-s}
                let d_only = BasisKey::new(MultiIndex::zero(), key.d.clone());
                for (s, e) in key.h.support() {
                    let coef = Scalar::from_int(i64::from(e) * (q + s as i64));
                    let rest = key.h.minus_unit(s).expect("position in support");
                    let part = self.apply_key(Generator::H(n - q - s as i64), &d_only);
                    lin_add_scaled(&mut out, &part, &coef, &rest);
                }
                let part = self.d_on_d(n, &key.d);
                lin_add_scaled(&mut out, &part, &Scalar::one(), &key.h);
                out
            }
        }
    }

    /// `h_n · d^j ⊗ (·)` for a non-free `h_n`.
    fn h_on_d(&self, n: i64, d: &MultiIndex) -> Lin {
        let Some(p) = d.max_position() else {
            return self.subalgebra_action(Generator::H(n));
        };
        let rest = BasisKey::new(MultiIndex::zero(), d.minus_unit(p).expect("max position"));
        let p = p as i64;
        // h_n d_{-p} = d_{-p} h_n + n h_{n-p}
        let inner = self.apply_key(Generator::H(n), &rest);
        let mut out = self.apply_lin(Generator::D(-p), &inner);
        if n != 0 {
            let tail = self.apply_key(Generator::H(n - p), &rest);
            lin_add_scaled(&mut out, &tail, &Scalar::from_int(n), &MultiIndex::zero());
        }
        out
    }

    /// `d_n · d^j ⊗ (·)`.
    fn d_on_d(&self, n: i64, d: &MultiIndex) -> Lin {
        let Some(p) = d.max_position() else {
            return if n >= 0 {
                self.subalgebra_action(Generator::D(n))
            } else {
                self.identity_at(BasisKey::new(
                    MultiIndex::zero(),
                    MultiIndex::unit((-n) as usize),
                ))
            };
        };
        let p_i = p as i64;
        if n <= -p_i {
            // already in order: d_n sits to the left of every d_{-t} with t <= p
            return self.identity_at(BasisKey::new(
                MultiIndex::zero(),
                d.plus_unit((-n) as usize),
            ));
        }
        let rest = BasisKey::new(MultiIndex::zero(), d.minus_unit(p).expect("max position"));
        // d_n d_{-p} = d_{-p} d_n + (n+p)(d_{n-p} + h_{n-p}) + (n³-n)/12 δ_{n,p} c
        let inner = self.apply_key(Generator::D(n), &rest);
        let mut out = self.apply_lin(Generator::D(-p_i), &inner);
        let k = Scalar::from_int(n + p_i);
        if !k.is_zero() {
            let zero = MultiIndex::zero();
            lin_add_scaled(
                &mut out,
                &self.apply_key(Generator::D(n - p_i), &rest),
                &k,
                &zero,
            );
            lin_add_scaled(
                &mut out,
                &self.apply_key(Generator::H(n - p_i), &rest),
                &k,
                &zero,
            );
        }
        if n == p_i {
            let central = Scalar::frac(n * n * n - n, 12) * self.spec.c_scalar();
            lin_add_scaled(
                &mut out,
                &self.identity_at(rest.clone()),
                &central,
                &MultiIndex::zero(),
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lq_module::make_onedim;
    use Generator::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn v1() -> VVector {
        VVector(vec![s(1)])
    }

    fn key(h: &[(usize, u32)], d: &[(usize, u32)]) -> BasisKey {
        BasisKey::new(
            MultiIndex::from_pairs(h.iter().copied()),
            MultiIndex::from_pairs(d.iter().copied()),
        )
    }

    fn verma(lambda: i64, mu: i64) -> InducedModule {
        InducedModule::new(make_onedim(s(lambda), s(mu), s(0)))
    }

    #[test]
    fn act_examples_q0() {
        let m = verma(1, 7);
        let dm1 = IndVector::basis(key(&[], &[(1, 1)]), v1());
        let vac = IndVector::from_v(v1());
        assert_eq!(m.act(H(1), &dm1), vac.scale(&s(7)));
        assert_eq!(m.act(D(1), &dm1), vac.scale(&s(14)));
        assert!(m.act(D(2), &dm1).is_zero());
    }

    #[test]
    fn central_elements_act_as_scalars() {
        let m = verma(3, 5);
        let v = IndVector::from_terms(
            1,
            [
                (key(&[(1, 2)], &[(2, 1)]), VVector(vec![s(2)])),
                (key(&[], &[(1, 3)]), VVector(vec![s(-1)])),
            ],
        )
        .unwrap();
        assert_eq!(m.act(H(0), &v), v.scale(&s(5)));
        assert_eq!(m.act(C, &v), v.scale(&s(3)));
    }

    #[test]
    fn free_generators_build_normal_form() {
        let m = verma(1, 1);
        let vac = IndVector::from_v(v1());
        // d_{-1} d_{-2} v = d_{-2} d_{-1} v + [d_{-1}, d_{-2}] v = d_{-2}d_{-1} v + d_{-3} v + h_{-3} v
        let got = m.act_word(&[D(-1), D(-2)], &vac);
        let expected = IndVector::from_terms(
            1,
            [
                (key(&[], &[(1, 1), (2, 1)]), v1()),
                (key(&[], &[(3, 1)]), v1()),
                (key(&[(3, 1)], &[]), v1()),
            ],
        )
        .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn degree_examples() {
        let v = IndVector::from_terms(
            1,
            [
                (key(&[(1, 1)], &[(2, 1)]), v1()),
                (key(&[], &[(1, 1)]), v1()),
            ],
        )
        .unwrap();
        assert_eq!(v.degree().unwrap(), key(&[(1, 1)], &[(2, 1)]));
        assert_eq!(
            IndVector::from_v(v1()).degree().unwrap(),
            BasisKey::vacuum()
        );
        assert_eq!(IndVector::zero(1).degree(), Err(IndError::ZeroVector));
    }

    #[test]
    fn non_free_h_for_positive_q() {
        // q = 1: h_{-1} lies in L_1, only h_{-2}, h_{-3}, ... are free.
        let spec =
            crate::lq_module::LqModuleSpec::new(1, 1, BTreeMap::new(), BTreeMap::new(), s(0), 0)
                .unwrap();
        let m = InducedModule::new(spec);
        assert!(m.is_free_h(-2) && !m.is_free_h(-1));
        let vac = IndVector::from_v(v1());
        assert!(m.act(H(-1), &vac).is_zero());
        assert_eq!(
            m.act(H(-2), &vac),
            IndVector::basis(key(&[(1, 1)], &[]), v1())
        );
    }
}
