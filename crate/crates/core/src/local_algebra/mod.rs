//! Exact multivariate polynomials over the rationals, a Buchberger
//! implementation sized for small verification problems, and the local
//! computations around a resolved bad point of the symmetric square.

mod bad_point;
mod groebner;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use bad_point::{
    central_fiber_ideal, equivariance_check, find_parametrization, minors_identity,
    paper_relations, verify_parametrization, ActionBehaviour, ActionEntry, EquivarianceReport,
    MinorMatch, MinorsReport, MonomialMap, ParametrizationReport, RelationCheck, SignedMonomial,
    Vanishing,
};
pub use groebner::{buchberger, buchberger_with, s_polynomial, GroebnerLimits};
pub use parse::{parse_ideal_file, parse_polynomial, IdealParseError};

pub type Exponents = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("polynomials live in different rings: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("substitution needs {expected} images, got {found}")]
    SubstitutionArity { expected: usize, found: usize },
    #[error("{count} variables exceeds the limit of {limit}")]
    TooManyVariables { count: usize, limit: usize },
    #[error("{count} generators exceeds the limit of {limit}")]
    TooManyGenerators { count: usize, limit: usize },
    #[error("S-pair budget of {budget} exhausted")]
    PairBudgetExhausted { budget: usize },
    #[error("intermediate basis grew past {limit} elements")]
    BasisTooLarge { limit: usize },
    #[error("no monomial parametrization with degree at most {degree_bound}")]
    NoMapFound { degree_bound: u32 },
}

/// Monomial orders. Variable `0` is the largest variable in both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TermOrder {
    Lex,
    #[default]
    GrevLex,
}

impl TermOrder {
    pub fn compare(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::GrevLex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TermOrder::Lex => "lex",
            TermOrder::GrevLex => "grevlex",
        }
    }
}

impl std::str::FromStr for TermOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lex" | "plex" => Ok(TermOrder::Lex),
            "grevlex" | "degrevlex" | "drl" => Ok(TermOrder::GrevLex),
            other => Err(format!("unknown term order '{other}'")),
        }
    }
}

/// A polynomial in a fixed, named set of variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: Arc<[String]>,
    terms: BTreeMap<Exponents, BigRational>,
}

pub fn ring<S: AsRef<str>>(names: &[S]) -> Arc<[String]> {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

pub(crate) fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

impl Polynomial {
    pub fn zero(vars: &Arc<[String]>) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Arc<[String]>, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }

    pub fn integer(vars: &Arc<[String]>, c: i64) -> Self {
        Self::constant(vars, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(vars: &Arc<[String]>, index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Self::monomial(vars, BigRational::one(), e)
    }

    /// Looks a variable up by name.
    pub fn named(vars: &Arc<[String]>, name: &str) -> Option<Self> {
        vars.iter()
            .position(|v| v == name)
            .map(|i| Self::var(vars, i))
    }

    pub fn monomial(vars: &Arc<[String]>, c: BigRational, exponents: Exponents) -> Self {
        assert_eq!(
            exponents.len(),
            vars.len(),
            "exponent vector has the wrong length"
        );
        let mut p = Self::zero(vars);
        p.add_term(exponents, c);
        p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms
            .get(exponents)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    pub fn leading_term(&self, order: TermOrder) -> Option<(&Exponents, &BigRational)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: TermOrder) -> Option<&Exponents> {
        self.leading_term(order).map(|t| t.0)
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self, order: TermOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// `c * x^e * self`.
    pub fn mul_term(&self, e: &[u32], c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.iter().zip(e).map(|(a, b)| a + b).collect(), k * c))
                .collect(),
        }
    }

    fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(AlgebraError::VariableMismatch {
                left: self.vars.join(","),
                right: other.vars.join(","),
            })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Self, AlgebraError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Self, AlgebraError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Self, AlgebraError> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::integer(&self.vars, 1);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Replaces variable `i` by `images[i]`. All images must share one ring,
    /// which becomes the ring of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Self, AlgebraError> {
        if images.len() != self.nvars() {
            return Err(AlgebraError::SubstitutionArity {
                expected: self.nvars(),
                found: images.len(),
            });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        for img in images {
            first.check_ring(img)?;
        }
        let target = first.vars.clone();
        let mut out = Self::zero(&target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(&target, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k > 0 {
                    t = &t * &img.pow(k);
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Replaces a single variable, keeping the others.
    pub fn substitute_var(&self, index: usize, image: &Polynomial) -> Result<Self, AlgebraError> {
        self.check_ring(image)?;
        let images: Vec<_> = (0..self.nvars())
            .map(|i| {
                if i == index {
                    image.clone()
                } else {
                    Self::var(&self.vars, i)
                }
            })
            .collect();
        self.substitute(&images)
    }

    pub fn display_in(&self, order: TermOrder) -> OrderedDisplay<'_> {
        OrderedDisplay { poly: self, order }
    }

    fn fmt_terms<'a>(
        &'a self,
        f: &mut fmt::Formatter<'_>,
        terms: impl Iterator<Item = (&'a Exponents, &'a BigRational)>,
    ) -> fmt::Result {
        let mut first = true;
        for (e, c) in terms {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{k}", self.vars[i])
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub struct OrderedDisplay<'a> {
    poly: &'a Polynomial,
    order: TermOrder,
}

impl fmt::Display for OrderedDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|a, b| self.order.compare(b.0, a.0));
        self.poly.fmt_terms(f, terms.into_iter())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f, self.terms.iter().rev())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            /// Panics if the operands live in different rings.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $trait for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Generators in a common ring together with a term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    vars: Arc<[String]>,
    order: TermOrder,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(
        vars: &Arc<[String]>,
        order: TermOrder,
        generators: Vec<Polynomial>,
    ) -> Result<Self, AlgebraError> {
        let probe = Polynomial::zero(vars);
        for g in &generators {
            probe.check_ring(g)?;
        }
        Ok(Ideal {
            vars: vars.clone(),
            order,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn with_order(&self, order: TermOrder) -> Self {
        Ideal {
            order,
            ..self.clone()
        }
    }
}

/// Remainder of multivariate division of `p` by the generators of `ideal`.
pub fn reduce(p: &Polynomial, ideal: &Ideal) -> Polynomial {
    reduce_by(p, ideal.generators(), ideal.order())
}

pub(crate) fn reduce_by(p: &Polynomial, divisors: &[Polynomial], order: TermOrder) -> Polynomial {
    let leads: Vec<(Exponents, BigRational)> = divisors
        .iter()
        .filter_map(|g| g.leading_term(order).map(|(e, c)| (e.clone(), c.clone())))
        .collect();
    let divisors: Vec<&Polynomial> = divisors.iter().filter(|g| !g.is_zero()).collect();
    let mut rest = p.clone();
    let mut remainder = Polynomial::zero(&p.vars);
    while let Some((e, c)) = rest
        .leading_term(order)
        .map(|(e, c)| (e.clone(), c.clone()))
    {
        let hit = leads.iter().position(|(le, _)| divides(le, &e));
        match hit {
            Some(i) => {
                let (le, lc) = &leads[i];
                let shift: Exponents = e.iter().zip(le).map(|(a, b)| a - b).collect();
                let factor = &c / lc;
                rest = &rest - &divisors[i].mul_term(&shift, &factor);
            }
            None => {
                rest.terms.remove(&e);
                remainder.add_term(e, c);
            }
        }
    }
    remainder
}
