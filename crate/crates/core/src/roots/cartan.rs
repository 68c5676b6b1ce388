use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A simple Cartan type such as `E8` or `C3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    pub family: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: char, rank: usize) -> Result<Self> {
        let family = family.to_ascii_uppercase();
        let ok = match family {
            'A' => (1..=8).contains(&rank),
            'B' | 'C' => (2..=8).contains(&rank),
            'D' => (4..=8).contains(&rank),
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidRootDatum(format!("no simple type {family}{rank} of rank at most 8")))
        }
    }

    /// Every simple type of rank at most 8.
    pub fn all() -> Vec<CartanType> {
        let mut out = Vec::new();
        for family in ['A', 'B', 'C', 'D', 'E', 'F', 'G'] {
            for rank in 1..=8 {
                if let Ok(t) = CartanType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Cartan matrix with `A[i][j] = ⟨α_j, α_i^∨⟩`, nodes numbered as in
    /// Bourbaki except `G2`, which is ordered (long, short).
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            'A' | 'B' | 'C' | 'F' | 'G' => {
                for i in 1..n {
                    link(i - 1, i);
                }
            }
            'D' => {
                for i in 1..n - 1 {
                    link(i - 1, i);
                }
                link(n - 3, n - 1);
            }
            'E' => {
                link(0, 2);
                link(1, 3);
                for i in 3..n {
                    link(i - 1, i);
                }
            }
            _ => unreachable!("validated family"),
        }
        match self.family {
            // α_n short
            'B' => a[n - 1][n - 2] = -2,
            // α_n long
            'C' => a[n - 2][n - 1] = -2,
            // α_1, α_2 long; α_3, α_4 short
            'F' => a[2][1] = -2,
            // α_1 long, α_2 short
            'G' => a[1][0] = -3,
            _ => {}
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().ok_or_else(|| Error::Malformed("empty type".into()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Malformed(format!("type {s:?} must look like E8 or C3")))?;
        CartanType::new(family, rank)
    }
}

/// Splits a Cartan matrix into connected components of its Dynkin diagram.
pub fn components(a: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Type of one irreducible component, with the low-rank coincidences
/// normalized (`B1 = C1 = A1`, `B2 = C2` written `C2`, `D3 = A3`).
fn component_type(a: &[Vec<i64>], nodes: &[usize]) -> String {
    let n = nodes.len();
    let bonds: Vec<i64> = nodes
        .iter()
        .flat_map(|&i| nodes.iter().map(move |&j| (i, j)))
        .filter(|&(i, j)| i < j && a[i][j] != 0)
        .map(|(i, j)| a[i][j] * a[j][i])
        .collect();
    let max_bond = bonds.iter().copied().max().unwrap_or(1);
    if max_bond == 3 {
        return "G2".into();
    }
    if max_bond == 2 {
        if n == 2 {
            return "C2".into();
        }
        // a node is short if it sits on the short side of a double bond or is
        // linked by simple bonds to such nodes
        let short = count_short(a, nodes);
        return match (n, short) {
            (4, 2) if !is_b_or_c(a, nodes) => "F4".into(),
            (_, 1) => format!("B{n}"),
            _ => format!("C{n}"),
        };
    }
    let degree = |i: usize| nodes.iter().filter(|&&j| j != i && a[i][j] != 0).count();
    let branch = nodes.iter().copied().find(|&i| degree(i) == 3);
    match branch {
        None => format!("A{n}"),
        Some(b) => {
            // arm lengths from the branch node
            let mut arms: Vec<usize> = nodes
                .iter()
                .copied()
                .filter(|&j| j != b && a[b][j] != 0)
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (b, start, 1);
                    loop {
                        let next = nodes.iter().copied().find(|&k| k != prev && k != cur && a[cur][k] != 0);
                        match next {
                            Some(k) => {
                                prev = cur;
                                cur = k;
                                len += 1;
                            }
                            None => break len,
                        }
                    }
                })
                .collect();
            arms.sort_unstable();
            if arms[0] == 1 && arms[1] == 1 {
                if n == 3 {
                    "A3".into()
                } else {
                    format!("D{n}")
                }
            } else {
                format!("E{n}")
            }
        }
    }
}

fn count_short(a: &[Vec<i64>], nodes: &[usize]) -> usize {
    // relative squared lengths: along an edge, |α_j|^2 / |α_i|^2 = A[i][j] / A[j][i]
    let mut len: Vec<Option<(i64, i64)>> = vec![None; a.len()];
    len[nodes[0]] = Some((1, 1));
    let mut stack = vec![nodes[0]];
    while let Some(i) = stack.pop() {
        let (num, den) = len[i].expect("visited");
        for &j in nodes {
            if j != i && a[i][j] != 0 && len[j].is_none() {
                len[j] = Some((num * a[i][j].abs(), den * a[j][i].abs()));
                stack.push(j);
            }
        }
    }
    let vals: Vec<(i64, i64)> = nodes.iter().map(|&i| len[i].expect("connected")).collect();
    let longest = vals.iter().copied().max_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1))).expect("nonempty");
    vals.iter().filter(|v| v.0 * longest.1 != longest.0 * v.1).count()
}

fn is_b_or_c(a: &[Vec<i64>], nodes: &[usize]) -> bool {
    // in B_n and C_n the double bond is at an end of the chain
    nodes.iter().any(|&i| {
        let nbrs: Vec<usize> = nodes.iter().copied().filter(|&j| j != i && a[i][j] != 0).collect();
        nbrs.len() == 1 && a[i][nbrs[0]] * a[nbrs[0]][i] == 2
    })
}

/// Product type label, e.g. `A1xC2`, components sorted.
pub fn type_label(a: &[Vec<i64>]) -> String {
    if a.is_empty() {
        return "T".into();
    }
    let mut parts: Vec<String> = components(a).iter().map(|c| component_type(a, c)).collect();
    parts.sort_by(|x, y| (x.as_bytes()[0], x[1..].parse::<usize>().unwrap_or(0)).cmp(&(y.as_bytes()[0], y[1..].parse::<usize>().unwrap_or(0))));
    parts.join("x")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_matrix_is_as_printed() {
        let a = CartanType::new('F', 4).unwrap().cartan_matrix();
        assert_eq!(a, vec![vec![2, -1, 0, 0], vec![-1, 2, -1, 0], vec![0, -2, 2, -1], vec![0, 0, -1, 2]]);
    }

    #[test]
    fn labels_recover_types() {
        for t in CartanType::all() {
            let want = match (t.family, t.rank) {
                ('B', 2) => "C2".to_string(),
                _ => t.to_string(),
            };
            assert_eq!(type_label(&t.cartan_matrix()), want, "{t}");
        }
    }

    #[test]
    fn parses_types() {
        assert_eq!("E8".parse::<CartanType>().unwrap(), CartanType { family: 'E', rank: 8 });
        assert!("E9".parse::<CartanType>().is_err());
        assert!("D3".parse::<CartanType>().is_err());
        assert!("X".parse::<CartanType>().is_err());
    }
}
