use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest variable count accepted by [`nae3sat_satisfiable`].
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Variable `var` (1-based) or its negation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Literal { var, positive: false }
    }

    /// DIMACS-style signed form: `3` is `x3`, `-3` is `¬x3`.
    pub fn from_signed(x: i64) -> Result<Self> {
        if x == 0 {
            return Err(Error::InvalidParameter("literal 0 is not allowed".into()));
        }
        Ok(Literal {
            var: x.unsigned_abs() as usize,
            positive: x > 0,
        })
    }

    pub fn signed(&self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn eval(&self, a: &Assignment) -> bool {
        a.values[self.var - 1] == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "x{}", self.var)
        } else {
            write!(f, "¬x{}", self.var)
        }
    }
}

/// Three-literal clauses over variables `1..=num_variables`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "FormulaRepr", into = "FormulaRepr")]
pub struct CnfFormula {
    num_variables: usize,
    clauses: Vec<[Literal; 3]>,
}

#[derive(Serialize, Deserialize)]
struct FormulaRepr {
    num_variables: usize,
    clauses: Vec<[i64; 3]>,
}

impl TryFrom<FormulaRepr> for CnfFormula {
    type Error = Error;

    fn try_from(r: FormulaRepr) -> Result<Self> {
        let clauses = r
            .clauses
            .iter()
            .map(|c| {
                Ok([
                    Literal::from_signed(c[0])?,
                    Literal::from_signed(c[1])?,
                    Literal::from_signed(c[2])?,
                ])
            })
            .collect::<Result<Vec<_>>>()?;
        CnfFormula::new(r.num_variables, clauses)
    }
}

impl From<CnfFormula> for FormulaRepr {
    fn from(f: CnfFormula) -> Self {
        FormulaRepr {
            num_variables: f.num_variables,
            clauses: f
                .clauses
                .iter()
                .map(|c| [c[0].signed(), c[1].signed(), c[2].signed()])
                .collect(),
        }
    }
}

impl CnfFormula {
    pub fn new(num_variables: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        if num_variables == 0 {
            return Err(Error::InvalidParameter("formula needs at least one variable".into()));
        }
        for (j, c) in clauses.iter().enumerate() {
            if let Some(l) = c.iter().find(|l| l.var == 0 || l.var > num_variables) {
                return Err(Error::InvalidParameter(format!(
                    "clause {} uses variable {} outside 1..={num_variables}",
                    j + 1,
                    l.var
                )));
            }
        }
        Ok(CnfFormula {
            num_variables,
            clauses,
        })
    }

    /// Builds from signed-integer clauses, e.g. `[[1, 2, 3], [-1, -2, -3]]`.
    pub fn from_signed(num_variables: usize, clauses: &[[i64; 3]]) -> Result<Self> {
        FormulaRepr {
            num_variables,
            clauses: clauses.to_vec(),
        }
        .try_into()
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .clauses
            .iter()
            .map(|c| format!("({} ∨ {} ∨ {})", c[0], c[1], c[2]))
            .collect();
        write!(f, "{}", parts.join(" ∧ "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Assignment {
    pub values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    /// Assignment whose i-th variable (0-based) is bit `t - 1 - i` of `bits`,
    /// so counting upward walks assignments in lexicographic order.
    pub fn from_bits(t: usize, bits: u64) -> Self {
        Assignment {
            values: (0..t).map(|i| bits >> (t - 1 - i) & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Every clause has a true and a false literal under `a`.
pub fn nae_check(phi: &CnfFormula, a: &Assignment) -> Result<bool> {
    if a.len() != phi.num_variables {
        return Err(Error::AssignmentSize {
            variables: phi.num_variables,
            values: a.len(),
        });
    }
    Ok(phi.clauses.iter().all(|c| {
        let first = c[0].eval(a);
        c[1..].iter().any(|l| l.eval(a) != first)
    }))
}

/// First NAE-satisfying assignment in lexicographic order (`false < true`,
/// `x1` most significant), by exhaustive search.
pub fn nae3sat_satisfiable(phi: &CnfFormula) -> Result<Option<Assignment>> {
    let t = phi.num_variables;
    if t > BRUTE_FORCE_LIMIT {
        return Err(Error::OracleSizeExceeded {
            n: t,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    for bits in 0..1u64 << t {
        let a = Assignment::from_bits(t, bits);
        if nae_check(phi, &a)? {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Every formula with `1..=max_vars` variables and `1..=max_clauses` clauses,
/// up to the order of literals within a clause and of clauses within the formula.
pub fn enumerate_formulas(max_vars: usize, max_clauses: usize) -> Vec<CnfFormula> {
    let mut out = Vec::new();
    for t in 1..=max_vars {
        let literals: Vec<Literal> = (1..=t)
            .flat_map(|v| [Literal::pos(v), Literal::neg(v)])
            .collect();
        let clauses: Vec<[Literal; 3]> = multisets(literals.len(), 3)
            .into_iter()
            .map(|ix| [literals[ix[0]], literals[ix[1]], literals[ix[2]]])
            .collect();
        for m in 1..=max_clauses {
            for pick in multisets(clauses.len(), m) {
                let cs = pick.iter().map(|&i| clauses[i]).collect();
                out.push(CnfFormula::new(t, cs).expect("literals drawn from 1..=t"));
            }
        }
    }
    out
}

/// Nondecreasing index sequences of length `k` over `0..n`.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: &[bool]) -> Assignment {
        Assignment::new(v.to_vec())
    }

    #[test]
    fn nae_examples() {
        let phi = CnfFormula::from_signed(3, &[[1, 2, 3]]).unwrap();
        assert!(nae_check(&phi, &a(&[true, true, false])).unwrap());
        let same = CnfFormula::from_signed(1, &[[1, 1, 1]]).unwrap();
        assert!(!nae_check(&same, &a(&[true])).unwrap());
        assert!(!nae_check(&same, &a(&[false])).unwrap());
        let mixed = CnfFormula::from_signed(3, &[[-1, 2, 3]]).unwrap();
        assert!(nae_check(&mixed, &a(&[true, true, true])).unwrap());
        assert!(matches!(
            nae_check(&phi, &a(&[true])),
            Err(Error::AssignmentSize { variables: 3, values: 1 })
        ));
    }

    #[test]
    fn brute_force_examples() {
        let phi = CnfFormula::from_signed(3, &[[1, 2, 3]]).unwrap();
        assert_eq!(nae3sat_satisfiable(&phi).unwrap(), Some(a(&[false, false, true])));
        let same = CnfFormula::from_signed(1, &[[1, 1, 1]]).unwrap();
        assert_eq!(nae3sat_satisfiable(&same).unwrap(), None);
        let pair = CnfFormula::from_signed(3, &[[1, 2, 3], [-1, -2, -3]]).unwrap();
        let sol = nae3sat_satisfiable(&pair).unwrap().unwrap();
        assert!(nae_check(&pair, &sol).unwrap());
        assert!(nae_check(&pair, &a(&[true, false, false])).unwrap());
        let big = CnfFormula::from_signed(25, &[[1, 2, 25]]).unwrap();
        assert!(nae3sat_satisfiable(&big).is_err());
    }

    #[test]
    fn validation() {
        assert!(CnfFormula::from_signed(2, &[[1, 2, 3]]).is_err());
        assert!(CnfFormula::from_signed(2, &[[1, 0, 2]]).is_err());
        assert!(CnfFormula::from_signed(0, &[]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        // multisets of 3 literals from 2t, then multisets of m clauses
        let fs = enumerate_formulas(3, 2);
        assert_eq!(fs.len(), 4 + 10 + 20 + 210 + 56 + 1596);
        let mut seen = std::collections::HashSet::new();
        assert!(fs.iter().all(|f| seen.insert(f.clone())));
    }

    #[test]
    fn serde_signed_form() {
        let phi = CnfFormula::from_signed(3, &[[1, -2, 3]]).unwrap();
        let text = serde_json::to_string(&phi).unwrap();
        assert_eq!(text, r#"{"num_variables":3,"clauses":[[1,-2,3]]}"#);
        assert_eq!(serde_json::from_str::<CnfFormula>(&text).unwrap(), phi);
        assert!(serde_json::from_str::<CnfFormula>(r#"{"num_variables":1,"clauses":[[1,2,1]]}"#).is_err());
    }
}
