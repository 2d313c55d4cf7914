//! Precedence-aware printing; the output re-parses to the same formula.

use std::fmt::{self, Display, Formatter, Write};

use super::{BinaryOp, Ctl, Ltl, PathFormula};

const PREFIX: u8 = 6;

fn level(op: BinaryOp) -> u8 {
    match op {
        BinaryOp::Iff => 1,
        BinaryOp::Implies => 2,
        BinaryOp::Or => 3,
        BinaryOp::And => 4,
        _ => 5,
    }
}

/// Minimum levels for the (left, right) operands of `op`.
fn operand_levels(op: BinaryOp) -> (u8, u8) {
    let l = level(op);
    if op == BinaryOp::Implies || op.is_temporal() {
        (l + 1, l)
    } else {
        (l, l + 1)
    }
}

fn wrap(
    f: &mut Formatter<'_>,
    needed: u8,
    own: u8,
    body: impl FnOnce(&mut Formatter<'_>) -> fmt::Result,
) -> fmt::Result {
    if own < needed {
        f.write_char('(')?;
        body(f)?;
        f.write_char(')')
    } else {
        body(f)
    }
}

fn write_ltl(f: &mut Formatter<'_>, phi: &Ltl, needed: u8) -> fmt::Result {
    match phi {
        Ltl::Prop(p) => write!(f, "{p}"),
        Ltl::Unary(op, c) => wrap(f, needed, PREFIX, |f| {
            f.write_str(op.symbol())?;
            if op.is_temporal() {
                f.write_char(' ')?;
            }
            write_ltl(f, c, PREFIX)
        }),
        Ltl::Binary(op, l, r) => wrap(f, needed, level(*op), |f| {
            let (ll, rl) = operand_levels(*op);
            write_ltl(f, l, ll)?;
            write!(f, " {} ", op.symbol())?;
            write_ltl(f, r, rl)
        }),
    }
}

fn write_ctl(f: &mut Formatter<'_>, phi: &Ctl, needed: u8) -> fmt::Result {
    match phi {
        Ctl::Prop(p) => write!(f, "{p}"),
        Ctl::Not(c) => wrap(f, needed, PREFIX, |f| {
            f.write_char('!')?;
            write_ctl(f, c, PREFIX)
        }),
        Ctl::Binary(op, l, r) => wrap(f, needed, level(*op), |f| {
            let (ll, rl) = operand_levels(*op);
            write_ctl(f, l, ll)?;
            write!(f, " {} ", op.symbol())?;
            write_ctl(f, r, rl)
        }),
        Ctl::Quantified(q, PathFormula::Unary(op, c)) => wrap(f, needed, PREFIX, |f| {
            write!(f, "{} {} ", q.symbol(), op.symbol())?;
            write_ctl(f, c, PREFIX)
        }),
        Ctl::Quantified(q, PathFormula::Binary(op, l, r)) => wrap(f, needed, PREFIX, |f| {
            let (ll, rl) = operand_levels(*op);
            write!(f, "{}(", q.symbol())?;
            write_ctl(f, l, ll)?;
            write!(f, " {} ", op.symbol())?;
            write_ctl(f, r, rl)?;
            f.write_char(')')
        }),
    }
}

impl Display for Ltl {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_ltl(f, self, 0)
    }
}

impl Display for Ctl {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_ctl(f, self, 0)
    }
}

#[cfg(test)]
mod tests {
    use crate::formulas::{Ctl, Ltl};

    fn round(s: &str) -> String {
        s.parse::<Ltl>().unwrap().to_string()
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(round("(x1 <-> x2) -> x3"), "(x1 <-> x2) -> x3");
        assert_eq!(round("((x1 | x2) | x3)"), "x1 | x2 | x3");
        assert_eq!(round("x1 | (x2 | x3)"), "x1 | (x2 | x3)");
        assert_eq!(round("!(p)"), "!p");
        assert_eq!(round("X (p)"), "X p");
        assert_eq!(round("!(p U q)"), "!(p U q)");
        assert_eq!(round("(p U q) U r"), "(p U q) U r");
        assert_eq!(round("p U (q U r)"), "p U q U r");
        assert_eq!(round("(a -> b) -> c"), "(a -> b) -> c");
        assert_eq!(round("G F p & X !q"), "G F p & X !q");
    }

    #[test]
    fn ctl_printing() {
        let f: Ctl = "A (p U q) & E F p".parse().unwrap();
        assert_eq!(f.to_string(), "A(p U q) & E F p");
        let g: Ctl = "!(E X p)".parse().unwrap();
        assert_eq!(g.to_string(), "!E X p");
        assert_eq!(g.to_string().parse::<Ctl>().unwrap(), g);
    }
}
