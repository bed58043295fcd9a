//! Brute force over every F_q-subspace of W of dimension m: keep those that
//! are x-stable and isotropic for tr(v1* w2 - v2* w1), and compare with the
//! enumerated table.

use std::collections::BTreeSet;
use std::sync::Arc;

use weilstar::bundle::Bundle;
use weilstar::field::{FieldSpec, FiniteField, Fq};
use weilstar::ring::{Involution, InvolutiveRing, TruncatedPoly};
use weilstar::symplectic::WVector;

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in combinations(n, k - 1) {
            if rest.first().map_or(true, |&r| r > first) {
                let mut v = vec![first];
                v.extend(rest);
                out.push(v);
            }
        }
    }
    out
}

fn brute_force(ring: &TruncatedPoly, bundle: &Bundle) -> BTreeSet<Vec<usize>> {
    let f = ring.field();
    let q = f.q() as usize;
    let m = ring.m();
    let n = 2 * m;
    let split = |row: &[Fq]| (ring.from_coords(&row[..m]), ring.from_coords(&row[m..]));
    let form = |v: &[Fq], w: &[Fq]| {
        let (v1, v2) = split(v);
        let (w1, w2) = split(w);
        ring.trace_tr(&ring.sub(&ring.mul(&ring.star(&v1), &w2), &ring.mul(&ring.star(&v2), &w1)))
    };
    let x = ring.x();
    let mut found = BTreeSet::new();
    for pivots in combinations(n, m) {
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| ((pivots[i] + 1)..n).filter(|j| !pivots.contains(j)).map(move |j| (i, j)))
            .collect();
        for code in 0..q.pow(free.len() as u32) {
            let mut rows = vec![vec![Fq::ZERO; n]; m];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = f.one();
            }
            let mut c = code;
            for &(i, j) in &free {
                rows[i][j] = Fq((c % q) as u32);
                c /= q;
            }
            let isotropic = (0..m).all(|i| (0..m).all(|j| form(&rows[i], &rows[j]) == Fq::ZERO));
            if !isotropic {
                continue;
            }
            // span as coordinate vectors
            let mut span: Vec<Vec<Fq>> = vec![vec![Fq::ZERO; n]];
            for row in &rows {
                let mut next = Vec::with_capacity(span.len() * q);
                for s in &span {
                    for t in f.elements() {
                        next.push(s.iter().zip(row).map(|(&a, &b)| f.add(a, f.mul(t, b))).collect());
                    }
                }
                span = next;
            }
            let span_set: BTreeSet<Vec<Fq>> = span.iter().cloned().collect();
            let stable = rows.iter().all(|r| {
                let (a, b) = split(r);
                let mut xr = ring.coords(&ring.mul(&x, &a));
                xr.extend(ring.coords(&ring.mul(&x, &b)));
                span_set.contains(&xr)
            });
            if !stable {
                continue;
            }
            let mut idx: Vec<usize> = span
                .iter()
                .map(|v| {
                    let (a, b) = split(v);
                    bundle.module.index(&WVector::new(a, b))
                })
                .collect();
            idx.sort_unstable();
            found.insert(idx);
        }
    }
    found
}

fn check(p: u32, m: usize) -> usize {
    let f = Arc::new(FiniteField::new(&FieldSpec::prime(p)).unwrap());
    let ring = TruncatedPoly::new(f, m, Involution::NegateX).unwrap();
    let bundle = Bundle::new(ring.clone()).unwrap();
    let oracle = brute_force(&ring, &bundle);
    let table: BTreeSet<Vec<usize>> = bundle
        .table
        .iter()
        .map(|l| {
            let mut e = l.elements.clone();
            e.sort_unstable();
            e
        })
        .collect();
    assert_eq!(table.len(), bundle.table.len(), "duplicate Lagrangians in table");
    assert_eq!(oracle, table);
    table.len()
}

#[test]
fn no_lagrangian_missed_m1() {
    assert_eq!(check(3, 1), 4);
    assert_eq!(check(5, 1), 6);
}

#[test]
fn no_lagrangian_missed_m3() {
    let n = check(3, 3);
    assert!(n > 4);
}
