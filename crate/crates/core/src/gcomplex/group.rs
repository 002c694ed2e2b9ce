use serde::{Deserialize, Serialize};

use super::GComplexError;

/// A finite group given by its multiplication table.
///
/// Elements are the indices `0..order`. Row `g`, column `h` of the table holds `g·h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// The cyclic group `Z_q` with `g·h = (g + h) mod q`.
    pub fn cyclic(q: usize) -> Result<Self, GComplexError> {
        if q == 0 {
            return Err(GComplexError::ZeroOrder);
        }
        let table = (0..q)
            .map(|g| (0..q).map(|h| (g + h) % q).collect())
            .collect();
        let inverses = (0..q).map(|g| (q - g) % q).collect();
        Ok(Self {
            table,
            identity: 0,
            inverses,
        })
    }

    /// Validates a multiplication table. Latin-square failures are reported before a
    /// missing identity, which is reported before a failure of associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GComplexError> {
        let n = table.len();
        if n == 0 {
            return Err(GComplexError::ZeroOrder);
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GComplexError::NotSquare {
                    row: g,
                    len: row.len(),
                    order: n,
                });
            }
        }
        for (g, row) in table.iter().enumerate() {
            if !is_permutation(row.iter().copied(), n) {
                return Err(GComplexError::NotLatinRow { row: g });
            }
        }
        for h in 0..n {
            if !is_permutation(table.iter().map(|row| row[h]), n) {
                return Err(GComplexError::NotLatinColumn { column: h });
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(GComplexError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GComplexError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        // Latin rows guarantee a unique right inverse; associativity makes it two-sided.
        let inverses = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity)
                    .expect("latin row")
            })
            .collect();
        Ok(Self {
            table,
            identity,
            inverses,
        })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order()
    }

    /// `g^k` for `k >= 0`.
    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Powers `e, g, g^2, ...` of `g`, in that order.
    pub fn cyclic_subgroup(&self, g: usize) -> Vec<usize> {
        (0..self.element_order(g)).map(|k| self.pow(g, k)).collect()
    }

    /// True when element `1` generates the group with `1^k = k`, which is the
    /// convention used for generator-only actions.
    pub fn is_standard_cyclic(&self) -> bool {
        let n = self.order();
        n == 1 || (0..n).all(|k| self.pow(1, k) == k)
    }

    /// Subgroups of prime order `p`, each given by the smallest generating element,
    /// listed in increasing generator order.
    pub fn prime_order_subgroups(&self, p: usize) -> Vec<PrimeSubgroup> {
        let mut seen: Vec<Vec<usize>> = Vec::new();
        let mut out = Vec::new();
        for g in self.elements() {
            if g == self.identity || self.element_order(g) != p {
                continue;
            }
            let mut elems = self.cyclic_subgroup(g);
            elems.sort_unstable();
            if seen.contains(&elems) {
                continue;
            }
            seen.push(elems.clone());
            out.push(PrimeSubgroup {
                generator: g,
                elements: elems,
            });
        }
        out
    }

    /// One subgroup of order `p` per conjugacy class.
    pub fn prime_order_subgroup_classes(&self, p: usize) -> Vec<PrimeSubgroup> {
        let subgroups = self.prime_order_subgroups(p);
        let mut reps: Vec<PrimeSubgroup> = Vec::new();
        for s in subgroups {
            let conjugate_of_rep = reps.iter().any(|r| {
                self.elements().any(|x| {
                    let mut conj: Vec<usize> = r
                        .elements
                        .iter()
                        .map(|&h| self.mul(self.mul(x, h), self.inverse(x)))
                        .collect();
                    conj.sort_unstable();
                    conj == s.elements
                })
            });
            if !conjugate_of_rep {
                reps.push(s);
            }
        }
        reps
    }
}

/// A subgroup of prime order, identified by a generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeSubgroup {
    pub generator: usize,
    pub elements: Vec<usize>,
}

impl TryFrom<Vec<Vec<usize>>> for FiniteGroup {
    type Error = GComplexError;
    fn try_from(table: Vec<Vec<usize>>) -> Result<Self, Self::Error> {
        Self::from_table(table)
    }
}

impl From<FiniteGroup> for Vec<Vec<usize>> {
    fn from(g: FiniteGroup) -> Self {
        g.table
    }
}

fn is_permutation(items: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for x in items {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    seen.iter().all(|&b| b)
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}
