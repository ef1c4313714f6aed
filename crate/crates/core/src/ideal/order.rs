use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::Monomial;

/// Monomial orders exposed to callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Eliminates the first `k` variables: grevlex on them, ties broken by
    /// grevlex on the rest.
    Elimination(usize),
}

impl MonomialOrder {
    pub(crate) fn to_term_order(self, nvars: usize) -> Result<TermOrder> {
        Ok(match self {
            MonomialOrder::Grevlex => TermOrder::Grevlex,
            MonomialOrder::Lex => TermOrder::Lex,
            MonomialOrder::Elimination(k) => {
                if k == 0 || k >= nvars {
                    return Err(Error::InvalidOrder(format!(
                        "elimination block size {k} must lie in 1..{nvars}"
                    )));
                }
                TermOrder::block((0..k).collect(), nvars)
            }
        })
    }
}

/// Orders used by the engine. `Block` ranks first by grevlex on `elim` and
/// then by grevlex on `rest`, which makes it an elimination order for any
/// subset of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum TermOrder {
    Grevlex,
    Lex,
    Block { elim: Vec<usize>, rest: Vec<usize> },
}

fn grevlex_on(a: &Monomial, b: &Monomial, idx: &[usize]) -> Ordering {
    let da: u32 = idx.iter().map(|&i| a.exp(i)).sum();
    let db: u32 = idx.iter().map(|&i| b.exp(i)).sum();
    da.cmp(&db).then_with(|| {
        for &i in idx.iter().rev() {
            match a.exp(i).cmp(&b.exp(i)) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}

impl TermOrder {
    pub(crate) fn block(mut elim: Vec<usize>, nvars: usize) -> TermOrder {
        elim.sort_unstable();
        elim.dedup();
        let rest = (0..nvars).filter(|i| !elim.contains(i)).collect();
        TermOrder::Block { elim, rest }
    }

    #[inline]
    pub(crate) fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Grevlex => a.cmp(b),
            TermOrder::Lex => a.cmp_lex(b),
            TermOrder::Block { elim, rest } => {
                grevlex_on(a, b, elim).then_with(|| grevlex_on(a, b, rest))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::Elimination(1).to_term_order(3).unwrap();
        let w = Monomial::from_exps(&[1, 0, 0]);
        let big = Monomial::from_exps(&[0, 5, 5]);
        assert_eq!(o.cmp(&w, &big), Ordering::Greater);
        assert!(MonomialOrder::Elimination(3).to_term_order(3).is_err());
        assert!(MonomialOrder::Elimination(0).to_term_order(3).is_err());
    }
}
