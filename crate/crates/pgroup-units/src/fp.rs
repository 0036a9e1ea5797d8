//! Exact arithmetic and dense linear algebra over the prime field GF(p).

/// Canonical residue of `x` in `[0, p)`.
pub fn modp(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// Multiplicative inverse mod the odd prime `p`. Panics on zero.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a % p, p - 2, p)
}

/// Multiplicative inverse of a unit modulo an arbitrary modulus `m` (used for
/// prime-power moduli), via the extended Euclidean algorithm.
pub fn inv_unit_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert!(r0 == 1, "{a} is not a unit mod {m}");
    s0.rem_euclid(m as i128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Deterministic primality check, adequate for the small moduli used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A row space over GF(p) maintained in reduced row-echelon form.
///
/// Each inserted vector may carry an augmented tail (used to express echelon
/// rows as combinations of the inserted generators), so membership queries can
/// return coordinates over the original insertion order.
#[derive(Debug, Clone)]
pub struct RowSpace {
    p: u64,
    width: usize,
    aug: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    inserted: usize,
}

impl RowSpace {
    pub fn new(p: u64, width: usize) -> Self {
        Self::with_coordinates(p, width, 0)
    }

    /// `aug` is the maximum number of vectors that will be inserted; the
    /// augmented block tracks combination coefficients over them.
    pub fn with_coordinates(p: u64, width: usize, aug: usize) -> Self {
        RowSpace { p, width, aug, rows: Vec::new(), pivots: Vec::new(), inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` (length `width`) in place against the echelon rows,
    /// accumulating the combination used into `combo` (length `rank`).
    fn reduce_in_place(&self, v: &mut [u64], mut combo: Option<&mut Vec<u64>>) {
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = v[pc] % self.p;
            if c != 0 {
                let row = &self.rows[r];
                for j in pc..self.width {
                    v[j] = (v[j] + (self.p - c) * row[j]) % self.p;
                }
                if let Some(cmb) = combo.as_deref_mut() {
                    cmb[r] = c;
                }
            }
        }
    }

    /// Inserts `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        self.insert_tracked(v).is_none()
    }

    /// Inserts `v`. If `v` was already in the span, returns the coefficients
    /// expressing it over the previously inserted vectors.
    pub fn insert_tracked(&mut self, v: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(v.len(), self.width);
        let mut row: Vec<u64> = v.iter().map(|&x| x % self.p).collect();
        if self.aug > 0 {
            row.resize(self.width + self.aug, 0);
            row[self.width + self.inserted] = 1;
        }
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = row[pc];
            if c != 0 {
                let other = self.rows[r].clone();
                for j in 0..row.len() {
                    row[j] = (row[j] + (self.p - c) * other[j]) % self.p;
                }
            }
        }
        self.inserted += 1;
        let pivot = (0..self.width).find(|&j| row[j] != 0);
        match pivot {
            None => {
                if self.aug > 0 {
                    // row is now 0 = sum coef_i * v_i + 1 * v; solve for v.
                    let mut coords = vec![0u64; self.inserted - 1];
                    for (i, c) in coords.iter_mut().enumerate() {
                        *c = (self.p - row[self.width + i] % self.p) % self.p;
                    }
                    Some(coords)
                } else {
                    Some(Vec::new())
                }
            }
            Some(pc) => {
                let inv = inv_mod(row[pc], self.p);
                for x in row.iter_mut() {
                    *x = *x * inv % self.p;
                }
                // Back-substitute into existing rows to keep reduced form.
                for r in 0..self.rows.len() {
                    let c = self.rows[r][pc];
                    if c != 0 {
                        for j in 0..row.len() {
                            self.rows[r][j] = (self.rows[r][j] + (self.p - c) * row[j]) % self.p;
                        }
                    }
                }
                let at = self.pivots.iter().position(|&q| q > pc).unwrap_or(self.pivots.len());
                self.pivots.insert(at, pc);
                self.rows.insert(at, row);
                None
            }
        }
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.coordinates(v).is_some()
    }

    /// If `v` lies in the span, returns coefficients over the inserted vectors
    /// (only meaningful when constructed `with_coordinates`).
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(v.len(), self.width);
        let mut work = vec![0u64; self.width + self.aug];
        work[..self.width].copy_from_slice(v);
        for x in work[..self.width].iter_mut() {
            *x %= self.p;
        }
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = work[pc];
            if c != 0 {
                for j in 0..work.len() {
                    work[j] = (work[j] + (self.p - c) * self.rows[r][j]) % self.p;
                }
            }
        }
        if work[..self.width].iter().any(|&x| x != 0) {
            return None;
        }
        if self.aug > 0 {
            Some(work[self.width..].iter().map(|&x| (self.p - x) % self.p).collect())
        } else {
            Some(Vec::new())
        }
    }

    /// Residual of `v` after reduction against the span (length `width`).
    pub fn residual(&self, v: &[u64]) -> Vec<u64> {
        let mut work: Vec<u64> = v.iter().map(|&x| x % self.p).collect();
        self.reduce_in_place(&mut work, None);
        work
    }
}

/// Dense matrix over GF(p), row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl Mat {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Self {
        Mat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(p: u64, rows: Vec<Vec<u64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row.into_iter().map(|x| x % p));
        }
        Mat { p, rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rank(&self) -> usize {
        let mut space = RowSpace::new(self.p, self.cols);
        for i in 0..self.rows {
            space.insert(self.row(i));
        }
        space.rank()
    }

    /// Determinant of a square matrix via Gaussian elimination.
    pub fn det(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.data.clone();
        let p = self.p;
        let mut det = 1u64;
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r * n + col] != 0);
            let Some(pr) = pivot else { return 0 };
            if pr != col {
                for j in 0..n {
                    m.swap(pr * n + j, col * n + j);
                }
                det = (p - det) % p;
            }
            let pv = m[col * n + col];
            det = det * pv % p;
            let inv = inv_mod(pv, p);
            for r in col + 1..n {
                let c = m[r * n + col];
                if c != 0 {
                    let f = c * inv % p;
                    for j in col..n {
                        m[r * n + j] = (m[r * n + j] + (p - f) * m[col * n + j]) % p;
                    }
                }
            }
        }
        det
    }
}

/// Hermite normal form of the row lattice of an integer matrix.
///
/// Returns an upper-triangular basis (one row per column with nonzero
/// diagonal) of the lattice spanned by `rows`, assuming the quotient
/// `Z^cols / lattice` is finite. Entries above each pivot are reduced into
/// `[0, diagonal)`.
pub fn hermite_normal_form(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut work: Vec<Vec<i64>> = rows.iter().map(|r| {
        assert_eq!(r.len(), cols);
        r.clone()
    }).collect();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for col in 0..cols {
        loop {
            let mut idx: Option<usize> = None;
            for (i, r) in work.iter().enumerate() {
                if r[col] != 0 && idx.is_none_or(|j| r[col].abs() < work[j][col].abs()) {
                    idx = Some(i);
                }
            }
            let Some(i) = idx else {
                panic!("row lattice does not have full rank at column {col}");
            };
            let pivot_val = work[i][col];
            let pivot = work.swap_remove(i);
            let mut done = true;
            for r in work.iter_mut() {
                if r[col] != 0 {
                    let q = r[col].div_euclid(pivot_val);
                    for j in 0..cols {
                        r[j] -= q * pivot[j];
                    }
                    if r[col] != 0 {
                        done = false;
                    }
                }
            }
            work.push(pivot);
            if done {
                let at = work.len() - 1;
                let mut row = work.swap_remove(at);
                if row[col] < 0 {
                    for x in row.iter_mut() {
                        *x = -*x;
                    }
                }
                basis.push(row);
                break;
            }
        }
    }
    // Reduce entries above each diagonal into canonical range.
    for i in (0..cols).rev() {
        for k in 0..i {
            let q = basis[k][i].div_euclid(basis[i][i]);
            if q != 0 {
                for j in 0..cols {
                    basis[k][j] -= q * basis[i][j];
                }
            }
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_mod_small_primes() {
        for p in [3u64, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(3));
        assert!(is_prime(5));
        assert!(is_prime(7919));
        assert!(!is_prime(1));
        assert!(!is_prime(9));
        assert!(!is_prime(2 * 3 * 5 * 7));
    }

    #[test]
    fn rowspace_rank_and_membership() {
        let mut s = RowSpace::new(3, 4);
        assert!(s.insert(&[1, 2, 0, 0]));
        assert!(s.insert(&[0, 1, 1, 0]));
        assert!(!s.insert(&[1, 0, 1, 0])); // = r1 - 2 r2 over GF(3)
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&[2, 4, 0, 0]));
        assert!(!s.contains(&[0, 0, 0, 1]));
    }

    #[test]
    fn rowspace_coordinates_reconstruct() {
        let vecs: Vec<Vec<u64>> = vec![
            vec![1, 2, 0, 1],
            vec![0, 1, 1, 0],
            vec![1, 1, 1, 1],
        ];
        let mut s = RowSpace::with_coordinates(5, 4, vecs.len());
        for v in &vecs {
            s.insert_tracked(v);
        }
        let target = vec![2u64, 1, 4, 3];
        if let Some(coords) = s.coordinates(&target) {
            let mut rec = vec![0u64; 4];
            for (c, v) in coords.iter().zip(&vecs) {
                for j in 0..4 {
                    rec[j] = (rec[j] + c * v[j]) % 5;
                }
            }
            assert_eq!(rec, target);
        }
        // A vector surely in the span: sum of the first two generators.
        let inside = vec![1u64, 3, 1, 1];
        let coords = s.coordinates(&inside).expect("in span");
        let mut rec = vec![0u64; 4];
        for (c, v) in coords.iter().zip(&vecs) {
            for j in 0..4 {
                rec[j] = (rec[j] + c * v[j]) % 5;
            }
        }
        assert_eq!(rec, inside);
    }

    #[test]
    fn det_and_rank() {
        let m = Mat::from_rows(3, vec![vec![0, 1], vec![2, 0]]);
        assert_eq!(m.det(), 1); // -2 = 1 mod 3
        assert_eq!(m.rank(), 2);
        let sing = Mat::from_rows(3, vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(sing.det(), 0);
        assert_eq!(sing.rank(), 1);
    }

    #[test]
    fn hnf_triangular_with_expected_diagonal() {
        // Lattice for Z_3 x Z_9 with an identification c = z^3:
        // rows 3c, 9z, c - 3z.
        let rows = vec![vec![3, 0], vec![0, 9], vec![1, -3]];
        let h = hermite_normal_form(&rows, 2);
        assert_eq!(h[0][0], 1);
        assert_eq!(h[1][0], 0);
        assert_eq!(h[1][1], 9);
        // Quotient order = product of diagonal = 9.
        assert_eq!(h[0][0] * h[1][1], 9);
    }

    #[test]
    fn hnf_identified_subgroup_of_two_z9() {
        // 9z = 0, 9w = 0, 3z - 3w = 0.
        let rows = vec![vec![9, 0], vec![0, 9], vec![3, -3]];
        let h = hermite_normal_form(&rows, 2);
        assert_eq!(h[0][0] * h[1][1], 27);
        assert_eq!(h[0][0], 3);
    }
}
