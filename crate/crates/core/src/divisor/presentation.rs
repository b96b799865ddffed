//! Cokernel presentations `Z[x]^s / (relation columns)` and their reduction
//! by logged invertible row and column operations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ZxMatrix, ZxVector};
use crate::ring::{OrderSign, ZxPoly};

/// One step of the reduction. Deletions are only allowed on a row and column
/// already cleared around a `1`, or on a zero column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Op {
    NegateCol {
        col: usize,
    },
    /// `row[target] += factor * row[source]`.
    AddRow {
        target: usize,
        source: usize,
        factor: ZxPoly,
    },
    /// `col[target] += factor * col[source]`.
    AddCol {
        target: usize,
        source: usize,
        factor: ZxPoly,
    },
    DeleteUnitPivot {
        row: usize,
        col: usize,
    },
    DeleteZeroCol {
        col: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Grid {
    rows: Vec<ZxVector>,
    cols: usize,
}

impl Grid {
    fn from_columns(nrows: usize, columns: &[ZxVector]) -> Self {
        let rows = (0..nrows)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        Grid {
            rows,
            cols: columns.len(),
        }
    }

    fn to_matrix(&self) -> ZxMatrix {
        let mut m = ZxMatrix::zeros(self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, e) in r.iter().enumerate() {
                m.set(i, j, e.clone());
            }
        }
        m
    }

    fn col_is_zero(&self, j: usize) -> bool {
        self.rows.iter().all(|r| r[j].is_zero())
    }

    fn apply(&mut self, op: &Op) -> Result<()> {
        let bad =
            |what: &str| Error::InternalInconsistency(format!("invalid reduction step: {what}"));
        let nr = self.rows.len();
        match op {
            Op::NegateCol { col } => {
                if *col >= self.cols {
                    return Err(bad("column out of range"));
                }
                for r in &mut self.rows {
                    r[*col] = -&r[*col];
                }
            }
            Op::AddRow {
                target,
                source,
                factor,
            } => {
                if target == source || *target >= nr || *source >= nr {
                    return Err(bad("row indices"));
                }
                let src = self.rows[*source].clone();
                for (t, s) in self.rows[*target].iter_mut().zip(&src) {
                    *t += &(factor * s);
                }
            }
            Op::AddCol {
                target,
                source,
                factor,
            } => {
                if target == source || *target >= self.cols || *source >= self.cols {
                    return Err(bad("column indices"));
                }
                for r in &mut self.rows {
                    let add = factor * &r[*source];
                    r[*target] += &add;
                }
            }
            Op::DeleteUnitPivot { row, col } => {
                if *row >= nr || *col >= self.cols || !self.rows[*row][*col].is_one() {
                    return Err(bad("pivot is not 1"));
                }
                let cleared = (0..self.cols).all(|j| j == *col || self.rows[*row][j].is_zero())
                    && (0..nr).all(|i| i == *row || self.rows[i][*col].is_zero());
                if !cleared {
                    return Err(bad("pivot row or column not cleared"));
                }
                self.rows.remove(*row);
                for r in &mut self.rows {
                    r.remove(*col);
                }
                self.cols -= 1;
            }
            Op::DeleteZeroCol { col } => {
                if *col >= self.cols || !self.col_is_zero(*col) {
                    return Err(bad("column is not zero"));
                }
                for r in &mut self.rows {
                    r.remove(*col);
                }
                self.cols -= 1;
            }
        }
        Ok(())
    }
}

/// `Z[x]^gens` modulo the columns of `relations`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModulePresentation {
    pub gens: usize,
    #[serde(with = "as_rows")]
    pub relations: ZxMatrix,
    #[serde(with = "as_rows")]
    pub reduced: ZxMatrix,
    pub log: Vec<Op>,
    pub shape: String,
}

/// Matrices as arrays of rows.
mod as_rows {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::linalg::{ZxMatrix, ZxVector};

    pub fn serialize<S: Serializer>(m: &ZxMatrix, s: S) -> Result<S::Ok, S::Error> {
        m.row_vectors().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ZxMatrix, D::Error> {
        let rows = Vec::<ZxVector>::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        ZxMatrix::from_rows(&rows, cols).map_err(serde::de::Error::custom)
    }
}

struct Reducer {
    grid: Grid,
    log: Vec<Op>,
}

impl Reducer {
    fn push(&mut self, op: Op) {
        self.grid.apply(&op).expect("reducer emits valid steps");
        self.log.push(op);
    }

    fn drop_zero_columns(&mut self) -> bool {
        let mut changed = false;
        let mut j = 0;
        while j < self.grid.cols {
            if self.grid.col_is_zero(j) {
                self.push(Op::DeleteZeroCol { col: j });
                changed = true;
            } else {
                j += 1;
            }
        }
        changed
    }

    fn unit_pivot(&mut self) -> bool {
        let found = (0..self.grid.rows.len())
            .flat_map(|i| (0..self.grid.cols).map(move |j| (i, j)))
            .find(|&(i, j)| self.grid.rows[i][j].is_unit());
        let Some((i, j)) = found else { return false };
        if !self.grid.rows[i][j].is_one() {
            self.push(Op::NegateCol { col: j });
        }
        self.isolate(i, j);
        self.push(Op::DeleteUnitPivot { row: i, col: j });
        true
    }

    /// Clears row `i` and column `j` around a pivot dividing all of them.
    fn isolate(&mut self, i: usize, j: usize) {
        let p = self.grid.rows[i][j].clone();
        for k in 0..self.grid.cols {
            let e = &self.grid.rows[i][k];
            if k != j && !e.is_zero() {
                let q = e.div_exact(&p).expect("pivot divides its row");
                self.push(Op::AddCol {
                    target: k,
                    source: j,
                    factor: -q,
                });
            }
        }
        for l in 0..self.grid.rows.len() {
            let e = &self.grid.rows[l][j];
            if l != i && !e.is_zero() {
                let q = e.div_exact(&p).expect("pivot divides its column");
                self.push(Op::AddRow {
                    target: l,
                    source: i,
                    factor: -q,
                });
            }
        }
    }

    fn isolated(&self, i: usize, j: usize) -> bool {
        (0..self.grid.cols).all(|k| k == j || self.grid.rows[i][k].is_zero())
            && (0..self.grid.rows.len()).all(|l| l == i || self.grid.rows[l][j].is_zero())
    }

    /// Isolates an entry that divides its whole row and column.
    fn dividing_pivot(&mut self) -> bool {
        for i in 0..self.grid.rows.len() {
            for j in 0..self.grid.cols {
                let p = &self.grid.rows[i][j];
                if p.is_zero() || self.isolated(i, j) {
                    continue;
                }
                let divides = (0..self.grid.cols)
                    .all(|k| self.grid.rows[i][k].div_exact(p).is_some())
                    && (0..self.grid.rows.len())
                        .all(|l| self.grid.rows[l][j].div_exact(p).is_some());
                if divides {
                    self.isolate(i, j);
                    return true;
                }
            }
        }
        false
    }

    /// Leading-term Euclid on two entries of one column (row operations) or
    /// one row (column operations), kept only when it reaches a unit.
    fn pair_gcd(&mut self) -> bool {
        let nr = self.grid.rows.len();
        let nc = self.grid.cols;
        for j in 0..nc {
            for a in 0..nr {
                for b in a + 1..nr {
                    if self.euclid(a, b, j, true) {
                        return true;
                    }
                }
            }
        }
        for i in 0..nr {
            for a in 0..nc {
                for b in a + 1..nc {
                    if self.euclid(a, b, i, false) {
                        return true;
                    }
                }
            }
        }
        false
    }

    fn euclid(&mut self, a: usize, b: usize, fixed: usize, rows: bool) -> bool {
        let get = |g: &Grid, k: usize| {
            if rows {
                g.rows[k][fixed].clone()
            } else {
                g.rows[fixed][k].clone()
            }
        };
        let (mut x, mut y) = (get(&self.grid, a), get(&self.grid, b));
        let mut steps = Vec::new();
        while !x.is_unit() && !y.is_unit() {
            if x.is_zero() || y.is_zero() || steps.len() > 64 {
                return false;
            }
            let (dx, dy) = (x.degree().unwrap(), y.degree().unwrap());
            let x_big = (dx, x.leading_coeff().unwrap().magnitude())
                >= (dy, y.leading_coeff().unwrap().magnitude());
            let (target, source, t, s) = if x_big {
                (a, b, &x, &y)
            } else {
                (b, a, &y, &x)
            };
            let (dt, ds) = (t.degree().unwrap(), s.degree().unwrap());
            let q = num_integer::Integer::div_floor(
                t.leading_coeff().unwrap(),
                s.leading_coeff().unwrap(),
            );
            if q == 0.into() {
                return false;
            }
            let factor = -ZxPoly::monomial(q, dt - ds);
            let next = t + &(&factor * s);
            if x_big {
                x = next;
            } else {
                y = next;
            }
            steps.push(if rows {
                Op::AddRow {
                    target,
                    source,
                    factor,
                }
            } else {
                Op::AddCol {
                    target,
                    source,
                    factor,
                }
            });
        }
        for op in steps {
            self.push(op);
        }
        true
    }
}

fn normalized(p: &ZxPoly) -> ZxPoly {
    if p.order_sign() == OrderSign::Negative {
        -p
    } else {
        p.clone()
    }
}

/// Names the cokernel of `m` when it is visibly a direct sum of cyclic modules.
fn shape_of(m: &ZxMatrix) -> String {
    let (nr, nc) = (m.rows(), m.cols());
    let mut torsion = Vec::new();
    let mut free = 0;
    for i in 0..nr {
        let nz: Vec<usize> = (0..nc).filter(|&j| !m.get(i, j).is_zero()).collect();
        match nz.as_slice() {
            [] => free += 1,
            [j] if (0..nr).all(|l| l == i || m.get(l, *j).is_zero()) => {
                let p = m.get(i, *j);
                if !p.is_unit() {
                    torsion.push(format!("Z[x]/({})", normalized(p)));
                }
            }
            _ => return "unrecognized".into(),
        }
    }
    let mut parts = torsion;
    if free > 0 {
        parts.push(format!("free^{free}"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}

impl ModulePresentation {
    /// Reduces `Z[x]^gens / (columns)` and classifies the result.
    pub fn from_columns(gens: usize, columns: &[ZxVector]) -> Result<Self> {
        for c in columns {
            crate::linalg::check_dim(gens, c.len())?;
        }
        let grid = Grid::from_columns(gens, columns);
        let relations = grid.to_matrix();
        let mut r = Reducer {
            grid,
            log: Vec::new(),
        };
        loop {
            let progressed = r.drop_zero_columns() | r.unit_pivot();
            if progressed {
                continue;
            }
            if r.pair_gcd() || r.dividing_pivot() {
                continue;
            }
            break;
        }
        let reduced = r.grid.to_matrix();
        let shape = shape_of(&reduced);
        Ok(ModulePresentation {
            gens,
            relations,
            reduced,
            log: r.log,
            shape,
        })
    }

    pub fn zero() -> Self {
        let empty = ZxMatrix::zeros(0, 0);
        ModulePresentation {
            gens: 0,
            relations: empty.clone(),
            reduced: empty,
            log: Vec::new(),
            shape: "0".into(),
        }
    }

    /// Re-applies the log to the original relations.
    pub fn replay(&self) -> Result<ZxMatrix> {
        let mut g = Grid::from_columns(self.gens, &self.relations.columns());
        for op in &self.log {
            g.apply(op)?;
        }
        Ok(g.to_matrix())
    }

    pub fn is_zero_module(&self) -> bool {
        self.shape == "0"
    }
}
