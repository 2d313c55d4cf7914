//! Direct evaluation from the textbook LTL semantics on explicit positions,
//! used as an oracle for the lasso checker.
//!
//! Positions are unrolled: for `u·v^ω`, every position `i` carries the
//! letter `u[i]` or `v[(i - |u|) mod |v|]`, and every quantification over
//! future positions `j ≥ i` is cut off after `|u| + |v|` steps, which
//! visits every distinct suffix reachable from `i`.

use crate::formulas::{BinaryOp, Ltl, UnaryOp};
use crate::models::{Letter, UltimatelyPeriodicWord};

fn letter(w: &UltimatelyPeriodicWord, i: usize) -> &Letter {
    let (u, v) = (w.prefix(), w.period());
    if i < u.len() {
        &u[i]
    } else {
        &v[(i - u.len()) % v.len()]
    }
}

/// `w, i ⊨ f`.
pub fn holds_at(f: &Ltl, w: &UltimatelyPeriodicWord, i: usize) -> bool {
    let horizon = w.prefix().len() + w.period().len();
    let window = i..i + horizon;
    let at = |g: &Ltl, j: usize| holds_at(g, w, j);
    match f {
        Ltl::Prop(p) => letter(w, i).contains(p),
        Ltl::Unary(op, g) => match op {
            UnaryOp::Not => !at(g, i),
            UnaryOp::Next => at(g, i + 1),
            UnaryOp::Finally => window.clone().any(|j| at(g, j)),
            UnaryOp::Globally => window.clone().all(|j| at(g, j)),
        },
        Ltl::Binary(op, a, b) => match op {
            BinaryOp::And => at(a, i) && at(b, i),
            BinaryOp::Or => at(a, i) || at(b, i),
            BinaryOp::Implies => !at(a, i) || at(b, i),
            BinaryOp::Iff => at(a, i) == at(b, i),
            BinaryOp::Until => window.clone().any(|j| at(b, j) && (i..j).all(|l| at(a, l))),
            BinaryOp::Release => window.clone().all(|j| at(b, j) || (i..j).any(|l| at(a, l))),
            BinaryOp::WeakUntil => {
                window.clone().any(|j| at(b, j) && (i..j).all(|l| at(a, l)))
                    || window.clone().all(|j| at(a, j))
            }
            BinaryOp::MightyRelease => {
                window.clone().any(|j| at(a, j) && (i..=j).all(|l| at(b, l)))
            }
        },
    }
}

/// `w ⊨ f`.
pub fn holds(f: &Ltl, w: &UltimatelyPeriodicWord) -> bool {
    holds_at(f, w, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::Proposition;

    #[test]
    fn textbook_cases() {
        let p = Proposition::new("p").unwrap();
        let w = UltimatelyPeriodicWord::new(vec![Letter::new()], vec![[p.clone()].into()]).unwrap();
        let f = |s: &str| s.parse::<Ltl>().unwrap();
        assert!(!holds(&f("p"), &w));
        assert!(holds(&f("X p"), &w));
        assert!(holds(&f("F G p"), &w));
        assert!(!holds(&f("G p"), &w));
        assert!(holds(&f("!p U p"), &w));
        assert!(!holds(&f("p R !p"), &w));
        assert!(!holds(&f("p M !p"), &w));
        assert!(holds(&f("X p M X p"), &w));
    }
}
