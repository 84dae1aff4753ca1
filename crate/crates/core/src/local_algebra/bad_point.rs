use std::fmt;
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{reduce, ring, AlgebraError, Ideal, Polynomial, TermOrder};

const A_VARS: [&str; 7] = ["a1", "a2", "a3", "a4", "a5", "a6", "a7"];
const CHART_VARS: [&str; 4] = ["x", "y", "u", "v"];

fn a_ring() -> Arc<[String]> {
    static R: OnceLock<Arc<[String]>> = OnceLock::new();
    R.get_or_init(|| ring(&A_VARS)).clone()
}

fn chart_ring() -> Arc<[String]> {
    static R: OnceLock<Arc<[String]>> = OnceLock::new();
    R.get_or_init(|| ring(&CHART_VARS)).clone()
}

fn a(i: usize) -> Polynomial {
    Polynomial::var(&a_ring(), i - 1)
}

/// `a_p a_q - a_r a_s`.
fn binomial(p: usize, q: usize, r: usize, s: usize) -> Polynomial {
    &(&a(p) * &a(q)) - &(&a(r) * &a(s))
}

/// The six quadrics cutting out the resolved bad point, in the order
/// `a5a6-a4a7, a3a6-a1a7, a2a6-a3a7, a3a4-a1a5, a2a4-a3a5, a1a2-a3^2`.
pub fn paper_relations() -> Ideal {
    let gens = vec![
        binomial(5, 6, 4, 7),
        binomial(3, 6, 1, 7),
        binomial(2, 6, 3, 7),
        binomial(3, 4, 1, 5),
        binomial(2, 4, 3, 5),
        binomial(1, 2, 3, 3),
    ];
    Ideal::new(&a_ring(), TermOrder::GrevLex, gens).expect("one ring")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorMatch {
    /// Zero-based column pair of the 2x4 matrix.
    pub columns: (usize, usize),
    pub minor: String,
    /// Index into `paper_relations()`, if the minor is one of them up to sign.
    pub relation: Option<usize>,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorsReport {
    pub matches: Vec<MinorMatch>,
    /// The minors and the relations agree up to sign as sets.
    pub holds: bool,
}

/// Compares the relations with the 2x2 minors of
/// `[[a1, a3, a4, a6], [a3, a2, a5, a7]]`.
pub fn minors_identity() -> MinorsReport {
    let rows = [[1, 3, 4, 6], [3, 2, 5, 7]];
    let relations = paper_relations();
    let mut matches = Vec::new();
    let mut used = [false; 6];
    for p in 0..4 {
        for q in p + 1..4 {
            let minor = &(&a(rows[0][p]) * &a(rows[1][q])) - &(&a(rows[0][q]) * &a(rows[1][p]));
            let mut found = None;
            for (k, r) in relations.generators().iter().enumerate() {
                if *r == minor {
                    found = Some((k, 1));
                } else if *r == -&minor {
                    found = Some((k, -1));
                }
                if found.is_some() {
                    break;
                }
            }
            if let Some((k, _)) = found {
                used[k] = true;
            }
            matches.push(MinorMatch {
                columns: (p, q),
                minor: minor.display_in(TermOrder::GrevLex).to_string(),
                relation: found.map(|f| f.0),
                sign: found.map_or(0, |f| f.1),
            });
        }
    }
    let holds = matches.iter().all(|m| m.relation.is_some()) && used.iter().all(|u| *u);
    MinorsReport { matches, holds }
}

/// `sign * x^e0 y^e1 u^e2 v^e3`; sign zero stands for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedMonomial {
    pub sign: i8,
    pub exponents: [u32; 4],
}

impl SignedMonomial {
    pub const ZERO: SignedMonomial = SignedMonomial {
        sign: 0,
        exponents: [0; 4],
    };

    pub fn new(sign: i8, exponents: [u32; 4]) -> Self {
        SignedMonomial {
            sign: sign.signum(),
            exponents,
        }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    /// Fixed by `(x, u) -> (-x, -u)`.
    pub fn is_even(&self) -> bool {
        (self.exponents[0] + self.exponents[2]).is_multiple_of(2)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let c = BigRational::from_integer(self.sign.into());
        Polynomial::monomial(&chart_ring(), c, self.exponents.to_vec())
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// Images of `a1..a5` and of the homogeneous pair `(a6 : a7)` in `x, y, u, v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialMap {
    pub affine: [SignedMonomial; 5],
    pub pair: [SignedMonomial; 2],
}

impl MonomialMap {
    pub fn images(&self) -> [SignedMonomial; 7] {
        let mut out = [SignedMonomial::ZERO; 7];
        out[..5].copy_from_slice(&self.affine);
        out[5..].copy_from_slice(&self.pair);
        out
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial, AlgebraError> {
        let images: Vec<Polynomial> = self
            .images()
            .iter()
            .map(SignedMonomial::to_polynomial)
            .collect();
        p.substitute(&images)
    }
}

impl fmt::Display for MonomialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.affine.iter().enumerate() {
            write!(f, "a{}={m}, ", i + 1)?;
        }
        write!(f, "(a6:a7)=({}:{})", self.pair[0], self.pair[1])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Vanishing {
    Identically,
    ModuloQuadric,
    Fails,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: Polynomial,
    pub image: Polynomial,
    /// Remainder of the image modulo `xy - uv`.
    pub residue: Polynomial,
    pub vanishing: Vanishing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametrizationReport {
    pub relations: Vec<RelationCheck>,
    /// Per image of `a1..a5`.
    pub invariant: [bool; 5],
    /// `a6` and `a7` pick up the same sign under the involution.
    pub pair_equivariant: bool,
    /// Every image is nonzero and no two coincide.
    pub nondegenerate: bool,
}

impl ParametrizationReport {
    pub fn residues_zero(&self) -> bool {
        self.relations.iter().all(|r| r.residue.is_zero())
    }

    pub fn accepted(&self) -> bool {
        self.residues_zero() && self.nondegenerate
    }

    pub fn equivariant(&self) -> bool {
        self.invariant.iter().all(|b| *b) && self.pair_equivariant
    }
}

fn quadric_ideal() -> Ideal {
    let r = chart_ring();
    let q = &(&Polynomial::var(&r, 0) * &Polynomial::var(&r, 1))
        - &(&Polynomial::var(&r, 2) * &Polynomial::var(&r, 3));
    Ideal::new(&r, TermOrder::Lex, vec![q]).expect("one ring")
}

fn nondegenerate(images: &[SignedMonomial]) -> bool {
    images.iter().all(|m| m.sign != 0)
        && images
            .iter()
            .enumerate()
            .all(|(i, m)| images[i + 1..].iter().all(|n| n.exponents != m.exponents))
}

pub fn verify_parametrization(map: &MonomialMap) -> ParametrizationReport {
    let quadric = quadric_ideal();
    let relations = paper_relations()
        .generators()
        .iter()
        .map(|rel| {
            let image = map.apply(rel).expect("seven images in one ring");
            let residue = reduce(&image, &quadric);
            let vanishing = if image.is_zero() {
                Vanishing::Identically
            } else if residue.is_zero() {
                Vanishing::ModuloQuadric
            } else {
                Vanishing::Fails
            };
            RelationCheck {
                relation: rel.clone(),
                image,
                residue,
                vanishing,
            }
        })
        .collect();
    let invariant = map.affine.map(|m| m.is_even());
    ParametrizationReport {
        relations,
        invariant,
        pair_equivariant: map.pair[0].is_even() == map.pair[1].is_even(),
        nondegenerate: nondegenerate(&map.images()),
    }
}

/// Nonconstant monomials of degree at most `bound`, by degree, then
/// lexicographically with `x > y > u > v`, each with sign `+` then `-`.
fn search_space(bound: u32) -> Vec<SignedMonomial> {
    let mut out = Vec::new();
    for d in 1..=bound {
        let mut exps = Vec::new();
        for e0 in 0..=d {
            for e1 in 0..=d - e0 {
                for e2 in 0..=d - e0 - e1 {
                    exps.push([e0, e1, e2, d - e0 - e1 - e2]);
                }
            }
        }
        exps.sort_by(|a, b| b.cmp(a));
        for e in exps {
            out.push(SignedMonomial::new(1, e));
            out.push(SignedMonomial::new(-1, e));
        }
    }
    out
}

struct Search {
    quadric: Ideal,
    relations: Vec<Polynomial>,
    invariant: Vec<(SignedMonomial, Polynomial)>,
    all: Vec<(SignedMonomial, Polynomial)>,
}

impl Search {
    fn vanishes(&self, rel: usize, chosen: &[Polynomial]) -> bool {
        let mut images: Vec<Polynomial> = chosen.to_vec();
        images.resize(7, Polynomial::zero(&chart_ring()));
        let image = self.relations[rel].substitute(&images).expect("one ring");
        reduce(&image, &self.quadric).is_zero()
    }

    fn fresh(m: &SignedMonomial, picked: &[SignedMonomial]) -> bool {
        picked.iter().all(|p| p.exponents != m.exponents)
    }

    fn run(&self, picked: &mut Vec<SignedMonomial>, polys: &mut Vec<Polynomial>) -> bool {
        let depth = picked.len();
        if depth == 7 {
            return true;
        }
        let pool = if depth < 5 {
            &self.invariant
        } else {
            &self.all
        };
        for (m, p) in pool {
            if !Self::fresh(m, picked) {
                continue;
            }
            if depth == 6 && m.is_even() != picked[5].is_even() {
                continue;
            }
            picked.push(*m);
            polys.push(p.clone());
            let ok = match depth {
                2 => self.vanishes(5, polys),
                4 => self.vanishes(3, polys) && self.vanishes(4, polys),
                6 => (0..3).all(|r| self.vanishes(r, polys)),
                _ => true,
            };
            if ok && self.run(picked, polys) {
                return true;
            }
            picked.pop();
            polys.pop();
        }
        false
    }
}

/// Depth-first search in the order of [`search_space`] for a map that kills
/// every relation modulo `xy - uv`, with even images for `a1..a5` and a pair
/// `(a6 : a7)` of matching parity.
pub fn find_parametrization(degree_bound: u32) -> Result<MonomialMap, AlgebraError> {
    let space = search_space(degree_bound);
    let with_poly = |m: &SignedMonomial| (*m, m.to_polynomial());
    let search = Search {
        quadric: quadric_ideal(),
        relations: paper_relations().generators().to_vec(),
        invariant: space
            .iter()
            .filter(|m| m.is_even())
            .map(with_poly)
            .collect(),
        all: space.iter().map(with_poly).collect(),
    };
    let mut picked = Vec::with_capacity(7);
    let mut polys = Vec::with_capacity(7);
    if !search.run(&mut picked, &mut polys) {
        return Err(AlgebraError::NoMapFound { degree_bound });
    }
    Ok(MonomialMap {
        affine: [picked[0], picked[1], picked[2], picked[3], picked[4]],
        pair: [picked[5], picked[6]],
    })
}

/// `a3` replaced by `a4 a5`, in the ring with variables `a1, a2, a4, ..., a7`.
pub fn central_fiber_ideal() -> Ideal {
    let target = ring(&["a1", "a2", "a4", "a5", "a6", "a7"]);
    let v = |name: &str| Polynomial::named(&target, name).expect("declared above");
    let images = vec![
        v("a1"),
        v("a2"),
        &v("a4") * &v("a5"),
        v("a4"),
        v("a5"),
        v("a6"),
        v("a7"),
    ];
    let gens = paper_relations()
        .generators()
        .iter()
        .map(|g| g.substitute(&images).expect("seven images"))
        .collect();
    Ideal::new(&target, TermOrder::GrevLex, gens).expect("one ring")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionBehaviour {
    Invariant,
    AntiInvariant,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionEntry {
    pub polynomial: Polynomial,
    pub image: Polynomial,
    pub behaviour: ActionBehaviour,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivarianceReport {
    pub entries: Vec<ActionEntry>,
}

impl EquivarianceReport {
    /// The entry for `xv - yu`, always first.
    pub fn base_parameter(&self) -> &ActionEntry {
        &self.entries[0]
    }
}

/// Applies `(x, y, u, v) -> (-x, y, -u, v)` to the base parameter `xv - yu`,
/// the quadric `xy - uv` and the monomials used by the chart.
pub fn equivariance_check() -> EquivarianceReport {
    let r = chart_ring();
    let [x, y, u, v] = [0, 1, 2, 3].map(|i| Polynomial::var(&r, i));
    let action = [-&x, y.clone(), -&u, v.clone()];
    let probes = [
        &(&x * &v) - &(&y * &u),
        &(&x * &y) - &(&u * &v),
        &x * &x,
        &x * &u,
        &u * &u,
        y.clone(),
        v.clone(),
    ];
    let entries = probes
        .into_iter()
        .map(|p| {
            let image = p.substitute(&action).expect("four images");
            let behaviour = if image == p {
                ActionBehaviour::Invariant
            } else if image == -&p {
                ActionBehaviour::AntiInvariant
            } else {
                ActionBehaviour::Neither
            };
            ActionEntry {
                polynomial: p,
                image,
                behaviour,
            }
        })
        .collect();
    EquivarianceReport { entries }
}

impl fmt::Display for ActionBehaviour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionBehaviour::Invariant => "invariant",
            ActionBehaviour::AntiInvariant => "anti-invariant",
            ActionBehaviour::Neither => "neither",
        })
    }
}
