use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A literal: variable index (1-based) and sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    /// DIMACS integer form.
    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "!x{}", self.var)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("clause {clause} is empty")]
    EmptyClause { clause: usize },
    #[error("literal {literal} in clause {clause} is outside 1..={vars}")]
    VariableOutOfRange {
        clause: usize,
        literal: i64,
        vars: usize,
    },
    #[error("line {line}: {message}")]
    Dimacs { line: usize, message: String },
}

/// A CNF formula over variables `1..=variable_count`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfInstance {
    variable_count: usize,
    clauses: Vec<Vec<Literal>>,
}

impl CnfInstance {
    pub fn new(variable_count: usize, clauses: Vec<Vec<Literal>>) -> Result<Self, CnfError> {
        for (i, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(CnfError::EmptyClause { clause: i + 1 });
            }
            if let Some(l) = clause
                .iter()
                .find(|l| l.var == 0 || l.var > variable_count)
            {
                return Err(CnfError::VariableOutOfRange {
                    clause: i + 1,
                    literal: l.to_dimacs(),
                    vars: variable_count,
                });
            }
        }
        Ok(CnfInstance {
            variable_count,
            clauses,
        })
    }

    /// Builds an instance from DIMACS-style signed integers.
    pub fn from_ints(variable_count: usize, clauses: &[&[i64]]) -> Result<Self, CnfError> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&l| Literal {
                        var: l.unsigned_abs() as usize,
                        positive: l > 0,
                    })
                    .collect()
            })
            .collect();
        CnfInstance::new(variable_count, clauses)
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.variable_count, self.clauses.len());
        for clause in &self.clauses {
            for l in clause {
                out.push_str(&l.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

impl fmt::Display for CnfInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("true");
        }
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let lits: Vec<String> = c.iter().map(Literal::to_string).collect();
                format!("({})", lits.join(" | "))
            })
            .collect();
        f.write_str(&parts.join(" & "))
    }
}

impl FromStr for CnfInstance {
    type Err = CnfError;

    /// Parses DIMACS CNF: `c` comment lines, a `p cnf V C` header, then
    /// zero-terminated clauses (which may span lines).
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, message: String| CnfError::Dimacs { line, message };
        let mut header: Option<(usize, usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('c') {
                continue;
            }
            if trimmed.starts_with('%') {
                break;
            }
            if trimmed.starts_with('p') {
                if header.is_some() {
                    return Err(err(line, "duplicate problem line".into()));
                }
                let parts: Vec<&str> = trimmed.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(err(line, "expected `p cnf <vars> <clauses>`".into()));
                }
                let vars = parts[2]
                    .parse()
                    .map_err(|_| err(line, format!("invalid variable count `{}`", parts[2])))?;
                let count = parts[3]
                    .parse()
                    .map_err(|_| err(line, format!("invalid clause count `{}`", parts[3])))?;
                header = Some((vars, count, line));
                continue;
            }
            let (vars, _, _) =
                header.ok_or_else(|| err(line, "clause before the `p cnf` line".into()))?;
            for tok in trimmed.split_whitespace() {
                let value: i64 = tok
                    .parse()
                    .map_err(|_| err(line, format!("invalid literal `{tok}`")))?;
                if value == 0 {
                    if current.is_empty() {
                        return Err(err(line, "empty clause".into()));
                    }
                    clauses.push(std::mem::take(&mut current));
                } else {
                    let var = value.unsigned_abs() as usize;
                    if var > vars {
                        return Err(err(
                            line,
                            format!("literal {value} exceeds the declared {vars} variables"),
                        ));
                    }
                    current.push(Literal {
                        var,
                        positive: value > 0,
                    });
                }
            }
        }
        let (vars, count, header_line) =
            header.ok_or_else(|| err(last_line.max(1), "missing `p cnf` line".into()))?;
        if !current.is_empty() {
            return Err(err(last_line, "last clause is not terminated by 0".into()));
        }
        if clauses.len() != count {
            return Err(err(
                header_line,
                format!("header declares {count} clauses but {} were given", clauses.len()),
            ));
        }
        CnfInstance::new(vars, clauses)
    }
}

/// A total assignment to variables `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Valuation(Vec<bool>);

impl Valuation {
    pub fn new(values: Vec<bool>) -> Self {
        Valuation(values)
    }

    pub fn variable_count(&self) -> usize {
        self.0.len()
    }

    /// Value of variable `var` (1-based).
    pub fn get(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn values(&self) -> &[bool] {
        &self.0
    }

    pub fn satisfies_literal(&self, l: Literal) -> bool {
        self.get(l.var) == l.positive
    }

    pub fn satisfies(&self, cnf: &CnfInstance) -> bool {
        self.0.len() == cnf.variable_count()
            && cnf
                .clauses()
                .iter()
                .all(|c| c.iter().any(|&l| self.satisfies_literal(l)))
    }
}

impl fmt::Display for Valuation {
    /// `x1=1 x2=0 ...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, &b)| format!("x{}={}", i + 1, u8::from(b)))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimacs_round_trip() {
        let text = "c example\np cnf 3 3\n1 0\n2 -3 -1 0\n-2\n3 0\n";
        let cnf: CnfInstance = text.parse().unwrap();
        assert_eq!(cnf.variable_count(), 3);
        assert_eq!(cnf.clauses().len(), 3);
        assert_eq!(cnf.clauses()[2], vec![Literal::neg(2), Literal::pos(3)]);
        assert_eq!(cnf.to_dimacs().parse::<CnfInstance>().unwrap(), cnf);
        assert_eq!(cnf.to_string(), "(x1) & (x2 | !x3 | !x1) & (!x2 | x3)");
    }

    #[test]
    fn dimacs_errors() {
        assert!(matches!(
            "1 0\n".parse::<CnfInstance>(),
            Err(CnfError::Dimacs { line: 1, .. })
        ));
        assert!(matches!(
            "p cnf 1 1\n2 0\n".parse::<CnfInstance>(),
            Err(CnfError::Dimacs { line: 2, .. })
        ));
        assert!(matches!(
            "p cnf 1 2\n1 0\n".parse::<CnfInstance>(),
            Err(CnfError::Dimacs { line: 1, .. })
        ));
        assert!(matches!(
            "p cnf 1 1\n0\n".parse::<CnfInstance>(),
            Err(CnfError::Dimacs { line: 2, .. })
        ));
        assert!(matches!(
            "p cnf 1 1\n1\n".parse::<CnfInstance>(),
            Err(CnfError::Dimacs { .. })
        ));
        assert!("p cnf 2 0\n".parse::<CnfInstance>().is_ok());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            CnfInstance::new(1, vec![vec![]]),
            Err(CnfError::EmptyClause { clause: 1 })
        );
        assert!(matches!(
            CnfInstance::from_ints(1, &[&[2]]),
            Err(CnfError::VariableOutOfRange { literal: 2, .. })
        ));
    }

    #[test]
    fn valuation_display_and_check() {
        let v = Valuation::new(vec![true, false]);
        assert_eq!(v.to_string(), "x1=1 x2=0");
        let cnf = CnfInstance::from_ints(2, &[&[1], &[-2, 1]]).unwrap();
        assert!(v.satisfies(&cnf));
        let cnf = CnfInstance::from_ints(2, &[&[2]]).unwrap();
        assert!(!v.satisfies(&cnf));
    }
}
