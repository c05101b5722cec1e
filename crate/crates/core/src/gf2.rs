//! Linear algebra over F₂ on vectors of at most 32 coordinates.
//!
//! A [`BitMatrix`] stores the images of the standard basis vectors, so column
//! `i` is `A·e_i` packed into a `u32`. Bases are returned in fully reduced
//! echelon form with the highest set bit as pivot, sorted by descending pivot.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: u32,
    cols: Vec<u32>,
}

#[derive(Clone, Copy)]
struct Pivot {
    vec: u32,
    tag: u32,
}

fn leading_bit(v: u32) -> usize {
    31 - v.leading_zeros() as usize
}

impl BitMatrix {
    pub fn from_columns(rows: u32, cols: Vec<u32>) -> Self {
        assert!(rows <= 32 && cols.len() <= 32);
        Self { rows, cols }
    }

    /// Matrix of an F₂-linear map on `n`-bit vectors given as a function.
    pub fn from_linear_fn(n: u32, rows: u32, f: impl Fn(u32) -> u32) -> Self {
        Self::from_columns(rows, (0..n).map(|i| f(1 << i)).collect())
    }

    pub fn rows(&self) -> u32 {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[u32] {
        &self.cols
    }

    pub fn apply(&self, v: u32) -> u32 {
        self.cols
            .iter()
            .enumerate()
            .filter(|(i, _)| (v >> i) & 1 == 1)
            .fold(0, |acc, (_, c)| acc ^ c)
    }

    // Eliminates columns in order, tagging each pivot with the combination of
    // original columns that produced it. Columns that reduce to zero yield
    // kernel vectors.
    fn eliminate(&self) -> ([Option<Pivot>; 32], Vec<u32>) {
        let mut pivots = [None; 32];
        let mut kernel = Vec::new();
        for (i, &c) in self.cols.iter().enumerate() {
            let (mut v, mut tag) = (c, 1u32 << i);
            loop {
                if v == 0 {
                    kernel.push(tag);
                    break;
                }
                let h = leading_bit(v);
                match pivots[h] {
                    Some(Pivot { vec, tag: t }) => {
                        v ^= vec;
                        tag ^= t;
                    }
                    None => {
                        pivots[h] = Some(Pivot { vec: v, tag });
                        break;
                    }
                }
            }
        }
        (pivots, kernel)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0.iter().flatten().count()
    }

    pub fn kernel_basis(&self) -> Vec<u32> {
        echelon(self.eliminate().1)
    }

    pub fn image_basis(&self) -> Vec<u32> {
        echelon(self.eliminate().0.iter().flatten().map(|p| p.vec).collect())
    }

    /// The least solution `v` (as an integer) of `A·v = target`, if any.
    pub fn solve(&self, target: u32) -> Option<u32> {
        let (pivots, kernel) = self.eliminate();
        let (mut v, mut sol) = (target, 0u32);
        while v != 0 {
            let p = pivots[leading_bit(v)]?;
            v ^= p.vec;
            sol ^= p.tag;
        }
        Some(reduce_against(sol, &echelon(kernel)))
    }
}

/// Reduce `v` against an echelon basis; the result is the least element of
/// the coset `v + span(basis)`.
pub fn reduce_against(mut v: u32, basis: &[u32]) -> u32 {
    for &b in basis {
        if (v >> leading_bit(b)) & 1 == 1 {
            v ^= b;
        }
    }
    v
}

/// Fully reduced echelon form of the span of `vectors`.
pub fn echelon(vectors: Vec<u32>) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for v in vectors {
        let r = reduce_against(v, &basis);
        if r == 0 {
            continue;
        }
        let h = leading_bit(r);
        for b in basis.iter_mut() {
            if (*b >> h) & 1 == 1 {
                *b ^= r;
            }
        }
        basis.push(r);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    basis
}

/// All `2^len` elements of the span of an independent set, sorted ascending.
pub fn span(basis: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32];
    for &b in basis {
        let extra: Vec<u32> = out.iter().map(|v| v ^ b).collect();
        out.extend(extra);
    }
    out.sort_unstable();
    out
}

pub fn in_span(v: u32, echelon_basis: &[u32]) -> bool {
    reduce_against(v, echelon_basis) == 0
}
