//! Dense linear algebra over `F_q` on row vectors.

use crate::field::{FiniteField, Fq};

pub type Row = Vec<Fq>;

/// Reduced row echelon form in place; zero rows are dropped. Returns the
/// pivot columns, one per remaining row.
pub fn rref(f: &FiniteField, rows: &mut Vec<Row>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        let Some(found) = (top..rows.len()).find(|&r| rows[r][col] != Fq::ZERO) else {
            continue;
        };
        rows.swap(top, found);
        let scale = f.inv(rows[top][col]).expect("pivot is nonzero");
        for x in rows[top].iter_mut() {
            *x = f.mul(*x, scale);
        }
        for r in 0..rows.len() {
            if r == top || rows[r][col] == Fq::ZERO {
                continue;
            }
            let factor = rows[r][col];
            for c in 0..ncols {
                let sub = f.mul(factor, rows[top][c]);
                rows[r][c] = f.sub(rows[r][c], sub);
            }
        }
        pivots.push(col);
        top += 1;
        if top == rows.len() {
            break;
        }
    }
    rows.truncate(top);
    pivots
}

pub fn rank(f: &FiniteField, rows: &[Row]) -> usize {
    let mut work = rows.to_vec();
    rref(f, &mut work).len()
}

/// Basis of `{x : rows · x = 0}` for a matrix with `ncols` columns.
pub fn kernel(f: &FiniteField, rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut work = rows.to_vec();
    let pivots = rref(f, &mut work);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Fq::ZERO; ncols];
            v[fc] = f.one();
            for (row, &pc) in work.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

/// Every vector in the span of `basis`, enumerated in lexicographic order of
/// the coefficient tuple.
pub fn span(f: &FiniteField, basis: &[Row], ncols: usize) -> Vec<Row> {
    let q = f.q() as usize;
    let total = q.pow(basis.len() as u32);
    let mut out = Vec::with_capacity(total);
    for n in 0..total {
        let mut v = vec![Fq::ZERO; ncols];
        let mut rest = n;
        for b in basis.iter().rev() {
            let c = Fq((rest % q) as u32);
            rest /= q;
            if c == Fq::ZERO {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        out.push(v);
    }
    out
}

pub fn dot(f: &FiniteField, a: &[Fq], b: &[Fq]) -> Fq {
    a.iter().zip(b).fold(Fq::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(f: &FiniteField, m: &[Row]) -> Option<Vec<Row>> {
    let n = m.len();
    let mut aug: Vec<Row> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { Fq::ZERO }));
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[u32]) -> Row {
        v.iter().map(|&x| Fq(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let f = FiniteField::prime(3).unwrap();
        let m = vec![row(&[1, 2, 0]), row(&[2, 1, 0]), row(&[0, 0, 1])];
        assert_eq!(rank(&f, &m), 2);
        let k = kernel(&f, &m, 3);
        assert_eq!(k.len(), 1);
        for r in &m {
            assert_eq!(dot(&f, r, &k[0]), Fq::ZERO);
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = FiniteField::prime(5).unwrap();
        let m = vec![row(&[1, 2]), row(&[3, 4])];
        let inv = inverse(&f, &m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let v: Row = (0..2).map(|k| inv[k][j]).collect();
                let expect = if i == j { f.one() } else { Fq::ZERO };
                assert_eq!(dot(&f, &m[i], &v), expect);
            }
        }
        assert!(inverse(&f, &[row(&[1, 2]), row(&[2, 4])]).is_none());
    }

    #[test]
    fn span_size() {
        let f = FiniteField::prime(3).unwrap();
        let s = span(&f, &[row(&[1, 0, 0]), row(&[0, 1, 1])], 3);
        assert_eq!(s.len(), 9);
        let mut d = s.clone();
        d.sort();
        d.dedup();
        assert_eq!(d.len(), 9);
    }
}
