use super::{divides, lcm, reduce_by, AlgebraError, Exponents, Ideal, Polynomial, TermOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerLimits {
    pub max_variables: usize,
    pub max_generators: usize,
    pub pair_budget: usize,
    pub max_basis: usize,
}

impl Default for GroebnerLimits {
    fn default() -> Self {
        GroebnerLimits {
            max_variables: 12,
            max_generators: 20,
            pair_budget: 20_000,
            max_basis: 400,
        }
    }
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: TermOrder) -> Polynomial {
    let (Some((ef, cf)), Some((eg, cg))) = (f.leading_term(order), g.leading_term(order)) else {
        return Polynomial::zero(f.vars());
    };
    let l = lcm(ef, eg);
    let shift = |e: &Exponents| -> Exponents { l.iter().zip(e).map(|(a, b)| a - b).collect() };
    &f.mul_term(&shift(ef), &cf.recip()) - &g.mul_term(&shift(eg), &cg.recip())
}

pub fn buchberger(ideal: &Ideal) -> Result<Ideal, AlgebraError> {
    buchberger_with(ideal, GroebnerLimits::default())
}

/// Reduced Gröbner basis, sorted by decreasing leading monomial.
pub fn buchberger_with(ideal: &Ideal, limits: GroebnerLimits) -> Result<Ideal, AlgebraError> {
    let order = ideal.order();
    if ideal.vars().len() > limits.max_variables {
        return Err(AlgebraError::TooManyVariables {
            count: ideal.vars().len(),
            limit: limits.max_variables,
        });
    }
    if ideal.len() > limits.max_generators {
        return Err(AlgebraError::TooManyGenerators {
            count: ideal.len(),
            limit: limits.max_generators,
        });
    }

    let mut basis: Vec<Polynomial> = ideal.generators().iter().map(|g| g.monic(order)).collect();
    let mut leads: Vec<Exponents> = basis
        .iter()
        .map(|g| g.leading_monomial(order).unwrap().clone())
        .collect();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    let mut processed = 0usize;

    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by_key(|&k| {
                let (i, j) = pairs[k];
                (lcm(&leads[i], &leads[j]).iter().sum::<u32>(), i, j)
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(pick);
        processed += 1;
        if processed > limits.pair_budget {
            return Err(AlgebraError::PairBudgetExhausted {
                budget: limits.pair_budget,
            });
        }
        if leads[i]
            .iter()
            .zip(&leads[j])
            .all(|(a, b)| *a == 0 || *b == 0)
        {
            continue;
        }
        let h = reduce_by(&s_polynomial(&basis[i], &basis[j], order), &basis, order);
        if h.is_zero() {
            continue;
        }
        if basis.len() >= limits.max_basis {
            return Err(AlgebraError::BasisTooLarge {
                limit: limits.max_basis,
            });
        }
        let h = h.monic(order);
        let k = basis.len();
        leads.push(h.leading_monomial(order).unwrap().clone());
        basis.push(h);
        pairs.extend((0..k).map(|i| (i, k)));
    }

    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len())
            .any(|j| j != i && divides(&leads[j], &leads[i]) && (leads[j] != leads[i] || j < i));
        if !redundant {
            keep.push(i);
        }
    }
    let minimal: Vec<Polynomial> = keep.iter().map(|&i| basis[i].clone()).collect();
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let lead = minimal[i].leading_term(order).unwrap();
            let tail = &minimal[i]
                - &Polynomial::monomial(minimal[i].vars(), lead.1.clone(), lead.0.clone());
            let head = Polynomial::monomial(minimal[i].vars(), lead.1.clone(), lead.0.clone());
            (&head + &reduce_by(&tail, &others, order)).monic(order)
        })
        .collect();
    reduced.sort_by(|a, b| {
        order.compare(
            b.leading_monomial(order).unwrap(),
            a.leading_monomial(order).unwrap(),
        )
    });
    Ideal::new(ideal.vars(), order, reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local_algebra::{parse_polynomial, reduce, ring};

    fn ideal(vars: &[&str], order: TermOrder, gens: &[&str]) -> Ideal {
        let r = ring(vars);
        Ideal::new(
            &r,
            order,
            gens.iter()
                .map(|g| parse_polynomial(g, &r).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn strings(ideal: &Ideal) -> Vec<String> {
        ideal
            .generators()
            .iter()
            .map(|g| g.display_in(ideal.order()).to_string())
            .collect()
    }

    fn assert_self_certifying(gb: &Ideal) {
        for (i, f) in gb.generators().iter().enumerate() {
            for g in &gb.generators()[i + 1..] {
                assert!(reduce(&s_polynomial(f, g, gb.order()), gb).is_zero());
            }
        }
    }

    #[test]
    fn small_examples() {
        let gb = buchberger(&ideal(&["x", "y"], TermOrder::Lex, &["x - y^2", "y"])).unwrap();
        assert_eq!(strings(&gb), ["x", "y"]);
        let gb = buchberger(&ideal(&["x", "y"], TermOrder::Lex, &["x"])).unwrap();
        assert_eq!(strings(&gb), ["x"]);
    }

    #[test]
    fn textbook_basis() {
        let i = ideal(
            &["x", "y"],
            TermOrder::GrevLex,
            &["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
        );
        let gb = buchberger(&i).unwrap();
        assert_eq!(strings(&gb), ["x^2", "x*y", "y^2 - 1/2*x"]);
        assert_self_certifying(&gb);
        for g in i.generators() {
            assert!(reduce(g, &gb).is_zero());
        }
    }

    #[test]
    fn guardrails() {
        let names: Vec<String> = (0..13).map(|i| format!("t{i}")).collect();
        let i = ideal(
            &names.iter().map(String::as_str).collect::<Vec<_>>(),
            TermOrder::Lex,
            &["t0"],
        );
        assert!(matches!(
            buchberger(&i),
            Err(AlgebraError::TooManyVariables { .. })
        ));

        let i = ideal(
            &["x", "y"],
            TermOrder::GrevLex,
            &["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"],
        );
        let tight = GroebnerLimits {
            pair_budget: 1,
            ..GroebnerLimits::default()
        };
        assert!(matches!(
            buchberger_with(&i, tight),
            Err(AlgebraError::PairBudgetExhausted { .. })
        ));
    }

    #[test]
    fn unit_ideal() {
        let gb = buchberger(&ideal(
            &["x", "y"],
            TermOrder::GrevLex,
            &["x*y - 1", "x", "y^2"],
        ))
        .unwrap();
        assert_eq!(strings(&gb), ["1"]);
    }
}
