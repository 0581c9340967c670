use std::collections::BTreeMap;
use std::fmt;

use ainf_exactlin::{Field, Scalar};

/// A finite linear combination with keys kept in sorted order. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<K: Ord> {
    field: Field,
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero(field: Field) -> Self {
        LinComb { field, terms: BTreeMap::new() }
    }

    pub fn single(field: Field, key: K, coeff: Scalar) -> Self {
        let mut c = Self::zero(field);
        c.add_term(key, coeff);
        c
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn add_term(&mut self, key: K, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<K>, scale: &Scalar) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * scale);
        }
    }

    pub fn add(&mut self, other: &LinComb<K>) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn sub(&mut self, other: &LinComb<K>) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), -v.clone());
        }
    }

    pub fn scaled(&self, scale: &Scalar) -> Self {
        let mut out = Self::zero(self.field);
        out.add_scaled(self, scale);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&self.field.from_int(-1))
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

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<K, Scalar> {
        self.terms
    }

    /// Largest coefficient magnitude, zero when empty.
    pub fn max_magnitude(&self) -> ainf_exactlin::Rational {
        self.terms
            .values()
            .map(Scalar::magnitude)
            .max()
            .unwrap_or_else(ainf_exactlin::Rational::zero)
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Option<(K2, bool)>) -> LinComb<K2> {
        let mut out = LinComb::zero(self.field);
        for (k, v) in &self.terms {
            if let Some((k2, neg)) = f(k) {
                out.add_term(k2, v.clone().signed(neg));
            }
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for LinComb<K> {
    /// Panics on an empty iterator: the field cannot be inferred.
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut it = iter.into_iter().peekable();
        let field = it.peek().map(|(_, s)| s.field()).expect("field of empty combination");
        let mut out = LinComb::zero(field);
        for (k, v) in it {
            out.add_term(k, v);
        }
        out
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(k, v)| format!("{v}·{k:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
