//! Exact linear algebra on full-rank sublattices of `Z²`.
//!
//! A lattice is stored in Hermite normal form as the two rows `(a, 0)` and
//! `(b, c)` with `a, c > 0` and `0 ≤ b < a`. Row reduction tracks the
//! unimodular transform so kernels and exact solves come for free.
//!
//! Everything is generic over the integer type: the ideal layer uses
//! `BigInt`, while hot enumeration loops use `i128` with overflow checks on.

use std::fmt::Debug;

use num_integer::Integer;
use num_traits::Signed;

pub trait LatInt: Integer + Signed + Clone + Debug {}
impl<T: Integer + Signed + Clone + Debug> LatInt for T {}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hnf<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: LatInt> Hnf<T> {
    pub fn rows(&self) -> [[T; 2]; 2] {
        [
            [self.a.clone(), T::zero()],
            [self.b.clone(), self.c.clone()],
        ]
    }

    pub fn index(&self) -> T {
        self.a.clone() * self.c.clone()
    }

    pub fn contains(&self, v: &[T; 2]) -> bool {
        let (q, r) = v[1].div_rem(&self.c);
        if !r.is_zero() {
            return false;
        }
        (v[0].clone() - q * self.b.clone()).is_multiple_of(&self.a)
    }

    pub fn contains_lattice(&self, other: &Hnf<T>) -> bool {
        other.rows().iter().all(|r| self.contains(r))
    }

    pub fn is_unimodular(&self) -> bool {
        self.a.is_one() && self.c.is_one()
    }
}

struct Row<T> {
    v: [T; 2],
    t: Vec<T>,
}

impl<T: LatInt> Row<T> {
    fn sub_mul(&mut self, q: &T, other: &Row<T>) {
        for k in 0..2 {
            self.v[k] = self.v[k].clone() - q.clone() * other.v[k].clone();
        }
        for (s, o) in self.t.iter_mut().zip(&other.t) {
            *s = s.clone() - q.clone() * o.clone();
        }
    }

    fn negate(&mut self) {
        for x in self.v.iter_mut().chain(self.t.iter_mut()) {
            *x = -x.clone();
        }
    }
}

/// Row reduction of a list of vectors with transform tracking.
#[derive(Debug, Clone)]
pub struct Reduction<T> {
    pub hnf: Hnf<T>,
    /// Row 0 combines the inputs into `(b, c)`, row 1 into `(a, 0)`,
    /// the remaining rows span the integer left kernel.
    pub transform: Vec<Vec<T>>,
}

/// `rows[dst] -= q·rows[src]`
fn sub_mul_rows<T: LatInt>(rows: &mut [Row<T>], dst: usize, src: usize, q: &T) {
    let (lo, hi) = (dst.min(src), dst.max(src));
    let (left, right) = rows.split_at_mut(hi);
    let (d, s) = if dst < src {
        (&mut left[lo], &right[0])
    } else {
        (&mut right[0], &left[lo])
    };
    d.sub_mul(q, s);
}

fn euclid_step<T: LatInt>(rows: &mut [Row<T>], p: usize, i: usize, col: usize) {
    while !rows[i].v[col].is_zero() {
        let q = rows[p].v[col].div_floor(&rows[i].v[col]);
        sub_mul_rows(rows, p, i, &q);
        rows.swap(p, i);
    }
}

/// Hermite normal form of the span of `vectors` with transform; `None` when
/// the span has rank below 2.
pub fn reduce<T: LatInt>(vectors: &[[T; 2]]) -> Option<Reduction<T>> {
    let n = vectors.len();
    let mut rows: Vec<Row<T>> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut t = vec![T::zero(); n];
            t[i] = T::one();
            Row { v: v.clone(), t }
        })
        .collect();

    let mut py = None;
    for i in 0..n {
        if rows[i].v[1].is_zero() {
            continue;
        }
        match py {
            None => py = Some(i),
            Some(p) => euclid_step(&mut rows, p, i, 1),
        }
    }
    let py = py?;
    if rows[py].v[1].is_negative() {
        rows[py].negate();
    }

    let mut px = None;
    for i in 0..n {
        if i == py || rows[i].v[0].is_zero() {
            continue;
        }
        match px {
            None => px = Some(i),
            Some(p) => euclid_step(&mut rows, p, i, 0),
        }
    }
    let px = px?;
    if rows[px].v[0].is_negative() {
        rows[px].negate();
    }
    let q = rows[py].v[0].div_floor(&rows[px].v[0]);
    sub_mul_rows(&mut rows, py, px, &q);

    let hnf = Hnf {
        a: rows[px].v[0].clone(),
        b: rows[py].v[0].clone(),
        c: rows[py].v[1].clone(),
    };
    let mut transform = Vec::with_capacity(n);
    transform.push(rows[py].t.clone());
    transform.push(rows[px].t.clone());
    for (i, r) in rows.into_iter().enumerate() {
        if i != px && i != py {
            transform.push(r.t);
        }
    }
    Some(Reduction { hnf, transform })
}

pub fn hnf<T: LatInt>(vectors: &[[T; 2]]) -> Option<Hnf<T>> {
    reduce(vectors).map(|r| r.hnf)
}

/// Integer coefficients `k` with `Σ kᵢ·vectorsᵢ = target`, if any.
pub fn solve<T: LatInt>(vectors: &[[T; 2]], target: &[T; 2]) -> Option<Vec<T>> {
    let red = reduce(vectors)?;
    let h = &red.hnf;
    let (qy, ry) = target[1].div_rem(&h.c);
    if !ry.is_zero() {
        return None;
    }
    let rest = target[0].clone() - qy.clone() * h.b.clone();
    let (qx, rx) = rest.div_rem(&h.a);
    if !rx.is_zero() {
        return None;
    }
    let coeffs = red.transform[0]
        .iter()
        .zip(&red.transform[1])
        .map(|(u, w)| qy.clone() * u.clone() + qx.clone() * w.clone())
        .collect();
    Some(coeffs)
}

/// `{u ∈ Z² : u·map ∈ lattice}` for an injective integer map given by rows.
pub fn preimage<T: LatInt>(map: &[[T; 2]; 2], lattice: &Hnf<T>) -> Option<Hnf<T>> {
    let lr = lattice.rows();
    let stacked = [
        map[0].clone(),
        map[1].clone(),
        [-lr[0][0].clone(), -lr[0][1].clone()],
        [-lr[1][0].clone(), -lr[1][1].clone()],
    ];
    let red = reduce(&stacked)?;
    let proj: Vec<[T; 2]> = red.transform[2..]
        .iter()
        .map(|k| [k[0].clone(), k[1].clone()])
        .collect();
    hnf(&proj)
}

/// Apply the row-vector map: `u·rows`.
pub fn apply<T: LatInt>(u: &[T; 2], rows: &[[T; 2]; 2]) -> [T; 2] {
    [
        u[0].clone() * rows[0][0].clone() + u[1].clone() * rows[1][0].clone(),
        u[0].clone() * rows[0][1].clone() + u[1].clone() * rows[1][1].clone(),
    ]
}

pub fn intersect<T: LatInt>(l1: &Hnf<T>, l2: &Hnf<T>) -> Hnf<T> {
    let r1 = l1.rows();
    let coeffs = preimage(&r1, l2).expect("full-rank lattices intersect in full rank");
    let img: Vec<[T; 2]> = coeffs.rows().iter().map(|u| apply(u, &r1)).collect();
    hnf(&img).expect("full-rank intersection")
}

pub fn sum<T: LatInt>(l1: &Hnf<T>, l2: &Hnf<T>) -> Hnf<T> {
    let mut v = l1.rows().to_vec();
    v.extend(l2.rows());
    hnf(&v).expect("sum of full-rank lattices")
}
