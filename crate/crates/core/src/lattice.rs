//! Finite-index sublattices of Z^n in lower-triangular Hermite normal form,
//! and brute-force counting of the ones closed under multiplication by t.
//!
//! Closure under t is equivalent to being an ideal of Z_f: the quotient ring
//! is generated by t over Z, so additivity plus t-stability gives stability
//! under every ring element.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::polyring::{mul_by_t_into, MonicPoly, RingVector};

/// Lower-triangular Hermite normal form.
///
/// Rows generate the lattice, the diagonal is positive, and every entry
/// below the diagonal in column j is reduced into [0, d_j).  Under this
/// normalization distinct matrices generate distinct sublattices, and every
/// finite-index sublattice of Z^n appears exactly once.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HNFMatrix {
    diag: Vec<BigInt>,
    /// Sub-diagonal entries in row-major order: (1,0), (2,0), (2,1), (3,0)...
    sub: Vec<BigInt>,
}

fn sub_len(n: usize) -> usize {
    n * (n - 1) / 2
}

fn sub_index(i: usize, j: usize) -> usize {
    debug_assert!(j < i);
    i * (i - 1) / 2 + j
}

impl HNFMatrix {
    pub fn new(diag: Vec<BigInt>, sub: Vec<BigInt>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::invalid("dimension must be positive"));
        }
        if sub.len() != sub_len(n) {
            return Err(Error::invalid(format!(
                "expected {} sub-diagonal entries, got {}",
                sub_len(n),
                sub.len()
            )));
        }
        for d in &diag {
            if !d.is_positive() {
                return Err(Error::invalid("diagonal entries must be positive"));
            }
        }
        for i in 1..n {
            for j in 0..i {
                let e = &sub[sub_index(i, j)];
                if e.is_negative() || e >= &diag[j] {
                    return Err(Error::invalid(format!(
                        "entry ({},{}) = {} not reduced mod column pivot {}",
                        i, j, e, diag[j]
                    )));
                }
            }
        }
        Ok(HNFMatrix { diag, sub })
    }

    pub fn identity(n: usize) -> Self {
        HNFMatrix {
            diag: vec![BigInt::from(1); n],
            sub: vec![BigInt::zero(); sub_len(n)],
        }
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[BigInt] {
        &self.diag
    }

    pub fn sub_entry(&self, i: usize, j: usize) -> &BigInt {
        &self.sub[sub_index(i, j)]
    }

    /// Index of the row lattice in Z^n.
    pub fn det(&self) -> BigInt {
        self.diag.iter().product()
    }

    /// Row i as a full-length vector.
    pub fn row(&self, i: usize) -> RingVector {
        let n = self.n();
        let mut v = vec![BigInt::zero(); n];
        for j in 0..i {
            v[j] = self.sub[sub_index(i, j)].clone();
        }
        v[i] = self.diag[i].clone();
        RingVector::new(v)
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.n()).map(|i| self.row(i).into_entries()).collect()
    }

    /// Hermite normal form of the lattice spanned by arbitrary integer
    /// generators (full rank required).
    pub fn from_generators(gens: &[Vec<BigInt>]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::invalid("no generators"));
        }
        let n = gens[0].len();
        for g in gens {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.len(),
                });
            }
        }
        let mut active: Vec<Vec<BigInt>> = gens.to_vec();
        let mut pivot_rows: Vec<Option<Vec<BigInt>>> = vec![None; n];
        for col in (0..n).rev() {
            // Euclidean elimination among the rows still carrying this column.
            loop {
                let mut idxs: Vec<usize> = (0..active.len())
                    .filter(|&i| !active[i][col].is_zero())
                    .collect();
                if idxs.len() <= 1 {
                    break;
                }
                idxs.sort_by(|&a, &b| active[a][col].abs().cmp(&active[b][col].abs()));
                let small = idxs[0];
                let big = idxs[idxs.len() - 1];
                let q = (&active[big][col]).div_rem(&active[small][col]).0;
                let subtrahend: Vec<BigInt> =
                    active[small].iter().map(|x| x * &q).collect();
                for (x, s) in active[big].iter_mut().zip(subtrahend) {
                    *x -= s;
                }
            }
            if let Some(i) = (0..active.len()).find(|&i| !active[i][col].is_zero()) {
                let mut row = active.swap_remove(i);
                if row[col].is_negative() {
                    for x in row.iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
                pivot_rows[col] = Some(row);
            } else {
                return Err(Error::invalid(
                    "generators do not span a finite-index sublattice",
                ));
            }
        }
        let mut rows: Vec<Vec<BigInt>> = pivot_rows.into_iter().map(Option::unwrap).collect();
        // Reduce the entries below each pivot into [0, d_j).
        for i in 1..n {
            for j in (0..i).rev() {
                let q = rows[i][j].div_floor(&rows[j][j]);
                if !q.is_zero() {
                    let subtrahend: Vec<BigInt> = rows[j].iter().map(|x| x * &q).collect();
                    for (x, s) in rows[i].iter_mut().zip(subtrahend) {
                        *x -= s;
                    }
                }
            }
        }
        let diag: Vec<BigInt> = (0..n).map(|i| rows[i][i].clone()).collect();
        let mut sub = Vec::with_capacity(sub_len(n));
        for i in 1..n {
            for j in 0..i {
                sub.push(rows[i][j].clone());
            }
        }
        HNFMatrix::new(diag, sub)
    }

    /// Whether w lies in the row lattice, decided by back-substitution from
    /// the last coordinate with an exact-divisibility test at every pivot.
    pub fn lattice_contains(&self, w: &RingVector) -> Result<bool> {
        let n = self.n();
        if w.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: w.len(),
            });
        }
        let rows = self.rows();
        let mut buf = w.entries().to_vec();
        Ok(rows_contain(&rows, n, &mut buf))
    }

    /// Whether the row lattice is an ideal of Z_f, i.e. closed under
    /// multiplication by t.
    pub fn is_ideal(&self, f: &MonicPoly) -> Result<bool> {
        let n = self.n();
        if f.degree() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: f.degree(),
            });
        }
        let rows = self.rows();
        let mut buf = vec![BigInt::zero(); n];
        for row in &rows {
            mul_by_t_into(f.low_coeffs(), row, &mut buf);
            if !rows_contain(&rows, n, &mut buf) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Back-substitution membership test against the first `upto` rows of a
/// lower-triangular generating set.  `w` must vanish at coordinates >= upto
/// and is consumed.
pub(crate) fn rows_contain(rows: &[Vec<BigInt>], upto: usize, w: &mut [BigInt]) -> bool {
    debug_assert!(w.iter().skip(upto).all(Zero::is_zero));
    for j in (0..upto).rev() {
        if w[j].is_zero() {
            continue;
        }
        let (q, r) = w[j].div_rem(&rows[j][j]);
        if !r.is_zero() {
            return false;
        }
        for l in 0..j {
            if !rows[j][l].is_zero() {
                w[l] -= &q * &rows[j][l];
            }
        }
        w[j] = BigInt::zero();
    }
    true
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Divisors of k in ascending order.
pub(crate) fn divisors(k: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d <= k / d {
        if k % d == 0 {
            small.push(d);
            if d != k / d {
                large.push(k / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// All tuples (d_1, ..., d_n) of positive integers with product k, in
/// lexicographic order.
pub(crate) fn ordered_factorizations(k: u64, n: usize) -> Vec<Vec<u64>> {
    fn rec(k: u64, pos: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if pos + 1 == cur.len() {
            cur[pos] = k;
            out.push(cur.clone());
            return;
        }
        for d in divisors(k) {
            cur[pos] = d;
            rec(k / d, pos + 1, cur, out);
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![1u64; n];
    rec(k, 0, &mut cur, &mut out);
    out
}

/// Factorizations forming divisor chains d_1 | d_2 | ... | d_n, in
/// lexicographic order.  For f = t^n these are the only diagonals an ideal
/// can have: the image of row j+1 starts its back-substitution with the
/// exact division d_{j+1} / d_j.
pub(crate) fn chain_factorizations(k: u64, n: usize) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![vec![k]];
    }
    let mut out = Vec::new();
    for d in divisors(k) {
        let dn = match d.checked_pow(n as u32) {
            Some(v) if k % v == 0 => v,
            _ => continue,
        };
        for tail in chain_factorizations(k / dn, n - 1) {
            let mut chain = Vec::with_capacity(n);
            chain.push(d);
            chain.extend(tail.iter().map(|f| f * d));
            out.push(chain);
        }
    }
    out
}

/// Streams every n x n HNF matrix of determinant k exactly once, ordered by
/// the diagonal tuple and then by the flattened sub-diagonal entries, both
/// lexicographically ascending.
pub fn enumerate_hnf(n: usize, k: u64) -> HnfIter {
    assert!(n >= 1, "dimension must be positive");
    assert!(k >= 1, "index must be positive");
    HnfIter {
        n,
        diagonals: ordered_factorizations(k, n),
        d_idx: 0,
        odo: None,
    }
}

pub struct HnfIter {
    n: usize,
    diagonals: Vec<Vec<u64>>,
    d_idx: usize,
    odo: Option<Vec<u64>>,
}

impl HnfIter {
    fn ranges(&self) -> Vec<u64> {
        let diag = &self.diagonals[self.d_idx];
        let mut r = Vec::with_capacity(sub_len(self.n));
        for i in 1..self.n {
            for j in 0..i {
                r.push(diag[j]);
            }
        }
        r
    }

    fn build(&self) -> HNFMatrix {
        let diag = self.diagonals[self.d_idx]
            .iter()
            .map(|&d| BigInt::from(d))
            .collect();
        let sub = self
            .odo
            .as_ref()
            .unwrap()
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        HNFMatrix::new(diag, sub).expect("enumerated entries are reduced")
    }
}

impl Iterator for HnfIter {
    type Item = HNFMatrix;

    fn next(&mut self) -> Option<HNFMatrix> {
        loop {
            if self.d_idx >= self.diagonals.len() {
                return None;
            }
            match self.odo.take() {
                None => {
                    self.odo = Some(vec![0; sub_len(self.n)]);
                    return Some(self.build());
                }
                Some(mut vals) => {
                    let ranges = self.ranges();
                    let mut wrapped = true;
                    for pos in (0..vals.len()).rev() {
                        vals[pos] += 1;
                        if vals[pos] < ranges[pos] {
                            wrapped = false;
                            break;
                        }
                        vals[pos] = 0;
                    }
                    if wrapped {
                        self.d_idx += 1;
                        continue;
                    }
                    self.odo = Some(vals);
                    return Some(self.build());
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Counting
// ---------------------------------------------------------------------------

/// Result of counting ideals of one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealCountRecord {
    pub poly: MonicPoly,
    pub k: u64,
    pub count: u64,
}

/// Counts the HNF matrices with a fixed diagonal whose row lattice is
/// t-stable.  The budget `examined` is charged per enumeration node and the
/// count aborts once it exceeds `cap`.
///
/// For f = t^n the t-image of row i has support strictly below i, so each
/// row is checked the moment it is complete and failing subtrees are pruned.
/// For general f the image can reach every coordinate and the test runs on
/// complete matrices only.
pub(crate) fn count_t_closed_with_diag(
    f: &MonicPoly,
    diag: &[BigInt],
    cap: u64,
    examined: &mut u64,
) -> Result<u64> {
    let n = f.degree();
    debug_assert_eq!(diag.len(), n);
    // Diagonal-only filter: the image of the top row is d_1 times the
    // reduction of t^n, whose last coordinate is -c_0; back-substitution
    // starts with an exact division by the last pivot.
    let top = &diag[0] * f.constant_term();
    if !top.mod_floor(&diag[n - 1]).is_zero() {
        return Ok(0);
    }
    // Column j feeds n-1-j odometer positions; ranges that cannot even be
    // indexed by u64 are far past any enumerable budget.
    let mut ranges = vec![0u64; n];
    for j in 0..n {
        if j + 1 < n {
            ranges[j] = diag[j].to_u64().ok_or(Error::ResourceLimit {
                examined: u64::MAX,
                cap,
            })?;
        }
    }
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = diag[i].clone();
            r
        })
        .collect();
    let mut state = Counter {
        low: f.low_coeffs(),
        n,
        ranges: &ranges,
        t_power: f.is_t_power(),
        wbuf: vec![BigInt::zero(); n],
        cap,
        examined,
        count: 0,
    };
    state.fill(&mut rows, 0, 0)?;
    Ok(state.count)
}

struct Counter<'a> {
    low: &'a [BigInt],
    n: usize,
    ranges: &'a [u64],
    t_power: bool,
    wbuf: Vec<BigInt>,
    cap: u64,
    examined: &'a mut u64,
    count: u64,
}

impl<'a> Counter<'a> {
    fn charge(&mut self) -> Result<()> {
        *self.examined += 1;
        if *self.examined > self.cap {
            return Err(Error::ResourceLimit {
                examined: *self.examined,
                cap: self.cap,
            });
        }
        Ok(())
    }

    fn fill(&mut self, rows: &mut Vec<Vec<BigInt>>, i: usize, j: usize) -> Result<()> {
        if i == self.n {
            self.charge()?;
            if self.t_power || self.full_check(rows) {
                self.count += 1;
            }
            return Ok(());
        }
        if j == i {
            if self.t_power && i >= 1 {
                self.charge()?;
                if !self.row_check_shift(rows, i) {
                    return Ok(());
                }
            }
            return self.fill(rows, i + 1, 0);
        }
        for v in 0..self.ranges[j] {
            rows[i][j] = BigInt::from(v);
            self.fill(rows, i, j + 1)?;
        }
        rows[i][j] = BigInt::zero();
        Ok(())
    }

    /// t^n case: the image of row i is its left shift, supported on the
    /// coordinates already pinned down by rows 0..i.
    fn row_check_shift(&mut self, rows: &[Vec<BigInt>], i: usize) -> bool {
        mul_by_t_into(self.low, &rows[i], &mut self.wbuf);
        rows_contain(rows, i, &mut self.wbuf)
    }

    fn full_check(&mut self, rows: &[Vec<BigInt>]) -> bool {
        for i in 0..self.n {
            mul_by_t_into(self.low, &rows[i], &mut self.wbuf);
            if !rows_contain(rows, self.n, &mut self.wbuf) {
                return false;
            }
        }
        true
    }
}

/// Number of ideals of Z_f of index exactly k.
pub fn count_ideals(f: &MonicPoly, k: u64, cap: u64) -> Result<IdealCountRecord> {
    if k == 0 {
        return Err(Error::invalid("index k must be positive"));
    }
    let n = f.degree();
    let diagonals = if f.is_t_power() {
        chain_factorizations(k, n)
    } else {
        ordered_factorizations(k, n)
    };
    let mut examined = 0u64;
    let mut count = 0u64;
    for diag in diagonals {
        let diag: Vec<BigInt> = diag.into_iter().map(BigInt::from).collect();
        count += count_t_closed_with_diag(f, &diag, cap, &mut examined)?;
    }
    Ok(IdealCountRecord {
        poly: f.clone(),
        k,
        count,
    })
}

/// a(1..=bound), each index counted with its own budget.
///
/// Indices are independent, so the computation partitions freely; results
/// are merged in index order and do not depend on the parallel schedule.
pub fn count_ideals_upto(f: &MonicPoly, bound: u64, cap: u64) -> Result<Vec<u64>> {
    use rayon::prelude::*;
    if bound == 0 {
        return Err(Error::invalid("bound must be positive"));
    }
    let results: Vec<Result<u64>> = (1..=bound)
        .into_par_iter()
        .map(|k| count_ideals(f, k, cap).map(|r| r.count))
        .collect();
    results.into_iter().collect()
}

/// Like [`count_ideals_upto`] but keeps whatever prefix was computed before
/// a resource cap struck, flagging the truncation.
pub fn count_ideals_upto_partial(
    f: &MonicPoly,
    bound: u64,
    cap: u64,
) -> (Vec<u64>, Option<Error>) {
    use rayon::prelude::*;
    let results: Vec<Result<u64>> = (1..=bound)
        .into_par_iter()
        .map(|k| count_ideals(f, k, cap).map(|r| r.count))
        .collect();
    let mut counts = Vec::with_capacity(results.len());
    for r in results {
        match r {
            Ok(c) => counts.push(c),
            Err(e) => return (counts, Some(e)),
        }
    }
    (counts, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{mul_by_t, parse_poly};
    use proptest::prelude::*;

    const CAP: u64 = 100_000_000;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn hnf(diag: &[i64], sub: &[i64]) -> HNFMatrix {
        HNFMatrix::new(
            diag.iter().map(|&d| bi(d)).collect(),
            sub.iter().map(|&s| bi(s)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn contains_full_lattice() {
        let m = HNFMatrix::identity(3);
        for w in [[0, 0, 0], [5, -7, 3], [1, 0, 0]] {
            let v = RingVector::new(w.iter().map(|&x| bi(x)).collect());
            assert!(m.lattice_contains(&v).unwrap());
        }
    }

    #[test]
    fn contains_even_lattice() {
        let m = hnf(&[2, 2], &[0]);
        let odd = RingVector::new(vec![bi(1), bi(0)]);
        let even = RingVector::new(vec![bi(2), bi(2)]);
        assert!(!m.lattice_contains(&odd).unwrap());
        assert!(m.lattice_contains(&even).unwrap());
    }

    #[test]
    fn contains_checks_dimension() {
        let m = HNFMatrix::identity(2);
        let w = RingVector::zero(3);
        assert!(matches!(
            m.lattice_contains(&w),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn is_ideal_scalar_and_mixed() {
        let f = parse_poly("t^2").unwrap();
        // 2 * Z_f
        assert!(hnf(&[2, 2], &[0]).is_ideal(&f).unwrap());
        // span of t and 2
        assert!(hnf(&[1, 2], &[0]).is_ideal(&f).unwrap());
    }

    #[test]
    fn exactly_one_ideal_of_index_two_in_dual_numbers() {
        let f = parse_poly("t^2").unwrap();
        let ideals: Vec<HNFMatrix> = enumerate_hnf(2, 2)
            .filter(|m| m.is_ideal(&f).unwrap())
            .collect();
        assert_eq!(ideals.len(), 1);
        assert_eq!(ideals[0], hnf(&[1, 2], &[0]));
    }

    #[test]
    fn enumerate_small_cases() {
        assert_eq!(
            enumerate_hnf(1, 5).collect::<Vec<_>>(),
            vec![hnf(&[5], &[])]
        );
        let all: Vec<HNFMatrix> = enumerate_hnf(2, 2).collect();
        assert_eq!(
            all,
            vec![
                hnf(&[1, 2], &[0]),
                hnf(&[2, 1], &[0]),
                hnf(&[2, 1], &[1]),
            ]
        );
        assert_eq!(
            enumerate_hnf(3, 1).collect::<Vec<_>>(),
            vec![HNFMatrix::identity(3)]
        );
    }

    #[test]
    fn enumeration_is_lexicographic_and_duplicate_free() {
        let mats: Vec<HNFMatrix> = enumerate_hnf(3, 12).collect();
        let keys: Vec<(Vec<BigInt>, Vec<BigInt>)> = mats
            .iter()
            .map(|m| (m.diag().to_vec(), m.rows().concat()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys.len(), sorted.len(), "duplicates found");
        // lexicographic by (diag, sub): already sorted
        let mut prev: Option<(Vec<BigInt>, Vec<BigInt>)> = None;
        for m in &mats {
            let key = (
                m.diag().to_vec(),
                (1..m.n())
                    .flat_map(|i| (0..i).map(move |j| (i, j)))
                    .map(|(i, j)| m.sub_entry(i, j).clone())
                    .collect::<Vec<_>>(),
            );
            if let Some(p) = prev {
                assert!(p < key);
            }
            prev = Some(key);
        }
    }

    #[test]
    fn sublattice_counts_match_shifted_zeta_product() {
        // The number of index-k sublattices of Z^n is the k-th coefficient
        // of zeta(s) zeta(s-1) ... zeta(s-n+1).
        use crate::series::{dirichlet_mul, zeta_shifted};
        for n in 1..=3usize {
            let bound = 40;
            let mut expected = zeta_shifted(1, 0, bound);
            for b in 1..n as u32 {
                expected = dirichlet_mul(&expected, &zeta_shifted(1, b, bound)).unwrap();
            }
            for k in 1..=bound {
                let got = enumerate_hnf(n, k).count();
                assert_eq!(
                    BigInt::from(got),
                    expected.get(k).clone(),
                    "n={} k={}",
                    n,
                    k
                );
            }
        }
    }

    #[test]
    fn count_ideals_of_z() {
        let f = parse_poly("t").unwrap();
        for k in 1..=20 {
            assert_eq!(count_ideals(&f, k, CAP).unwrap().count, 1);
        }
    }

    #[test]
    fn count_ideals_dual_numbers_index_four() {
        // sum over m with m^2 | 4 of m = 1 + 2
        let f = parse_poly("t^2").unwrap();
        assert_eq!(count_ideals(&f, 4, CAP).unwrap().count, 3);
    }

    #[test]
    fn count_ideals_cubic_prime_index() {
        let f = parse_poly("t^2(t-1)").unwrap();
        assert_eq!(count_ideals(&f, 2, CAP).unwrap().count, 2);
    }

    #[test]
    fn count_upto_small_tables() {
        let f1 = parse_poly("t").unwrap();
        assert_eq!(count_ideals_upto(&f1, 6, CAP).unwrap(), vec![1; 6]);
        let f2 = parse_poly("t^2").unwrap();
        assert_eq!(count_ideals_upto(&f2, 4, CAP).unwrap(), vec![1, 1, 1, 3]);
        // a(8) for t^3: diagonals (1,1,8), (1,2,4), (2,2,2) contribute 1+2+4.
        let f3 = parse_poly("t^3").unwrap();
        assert_eq!(
            count_ideals_upto(&f3, 8, CAP).unwrap(),
            vec![1, 1, 1, 3, 1, 1, 1, 7]
        );
    }

    #[test]
    fn counting_respects_resource_cap() {
        let f = parse_poly("t^3").unwrap();
        match count_ideals(&f, 64, 10) {
            Err(Error::ResourceLimit { examined, cap }) => {
                assert!(examined > cap);
                assert_eq!(cap, 10);
            }
            other => panic!("expected resource limit, got {:?}", other),
        }
    }

    #[test]
    fn pruned_count_matches_unpruned_enumeration_for_tn() {
        // The chain-diagonal and per-row pruning must not change any count.
        for n in 2..=3usize {
            let f = MonicPoly::t_power(n);
            for k in 1..=48u64 {
                let brute = enumerate_hnf(n, k)
                    .filter(|m| m.is_ideal(&f).unwrap())
                    .count() as u64;
                assert_eq!(
                    count_ideals(&f, k, CAP).unwrap().count,
                    brute,
                    "n={} k={}",
                    n,
                    k
                );
            }
        }
    }

    #[test]
    fn counts_match_plain_enumeration_for_general_cubics() {
        for src in ["t^2(t-1)", "t^2(t-2)", "t^3 - t - 1"] {
            let f = parse_poly(src).unwrap();
            for k in 1..=24u64 {
                let brute = enumerate_hnf(3, k)
                    .filter(|m| m.is_ideal(&f).unwrap())
                    .count() as u64;
                assert_eq!(count_ideals(&f, k, CAP).unwrap().count, brute, "f={} k={}", src, k);
            }
        }
    }

    #[test]
    fn multiplicative_on_coprime_indices() {
        for src in ["t^2", "t^3", "t^2(t-1)"] {
            let f = parse_poly(src).unwrap();
            let bound = 40;
            let a = count_ideals_upto(&f, bound, CAP).unwrap();
            for m in 2..=bound {
                for l in 2..=bound / m {
                    if num_integer::gcd(m, l) == 1 {
                        assert_eq!(
                            a[(m * l - 1) as usize],
                            a[(m - 1) as usize] * a[(l - 1) as usize],
                            "f={} m={} l={}",
                            src,
                            m,
                            l
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn prime_index_counts_are_root_counts() {
        for src in ["t^2", "t^3", "t^2(t-1)", "t^2(t-2)", "(t-1)(t-2)(t-3)"] {
            let f = parse_poly(src).unwrap();
            for p in [2u64, 3, 5, 7] {
                assert_eq!(
                    count_ideals(&f, p, CAP).unwrap().count,
                    f.distinct_roots_mod_p(p),
                    "f={} p={}",
                    src,
                    p
                );
            }
        }
    }

    #[test]
    fn residue_fraction_in_lattice_is_reciprocal_determinant() {
        // Among residues mod det, exactly det^(n-1) lie in the lattice.
        for (diag, sub) in [
            (vec![2i64, 4], vec![1i64]),
            (vec![4, 2], vec![3]),
            (vec![2, 2, 2], vec![1, 0, 1]),
        ] {
            let m = hnf(&diag, &sub);
            let n = m.n() as u32;
            let det = m.det().to_u64().unwrap();
            let inside = (0..det.pow(n))
                .filter(|&code| {
                    let mut c = code;
                    let w: Vec<BigInt> = (0..n)
                        .map(|_| {
                            let r = c % det;
                            c /= det;
                            BigInt::from(r)
                        })
                        .collect();
                    m.lattice_contains(&RingVector::new(w)).unwrap()
                })
                .count() as u64;
            assert_eq!(inside, det.pow(n - 1), "diag {:?}", diag);
        }
    }

    fn arb_hnf(n: usize) -> impl Strategy<Value = HNFMatrix> {
        (
            proptest::collection::vec(1u64..=6, n),
            proptest::collection::vec(0u64..1000, sub_len(n)),
        )
            .prop_map(move |(diag, raw)| {
                let mut sub = Vec::with_capacity(raw.len());
                let mut idx = 0;
                for i in 1..n {
                    for j in 0..i {
                        sub.push(BigInt::from(raw[idx] % diag[j]));
                        idx += 1;
                    }
                }
                HNFMatrix::new(diag.into_iter().map(BigInt::from).collect(), sub).unwrap()
            })
    }

    proptest! {
        /// Re-deriving the HNF from unimodularly transformed generators gives
        /// back the same matrix and the same ideal verdict.
        #[test]
        fn hnf_invariant_under_unimodular_row_ops(
            m in arb_hnf(3),
            ops in proptest::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..8),
        ) {
            let mut rows = m.rows();
            for (a, b, c) in ops {
                if a != b && c != 0 {
                    let scaled: Vec<BigInt> = rows[b].iter().map(|x| x * BigInt::from(c)).collect();
                    for (x, s) in rows[a].iter_mut().zip(scaled) {
                        *x += s;
                    }
                }
            }
            let back = HNFMatrix::from_generators(&rows).unwrap();
            prop_assert_eq!(&back, &m);
            let f = MonicPoly::t_power(3);
            prop_assert_eq!(back.is_ideal(&f).unwrap(), m.is_ideal(&f).unwrap());
        }

        #[test]
        fn membership_accepts_row_combinations(
            m in arb_hnf(3),
            coeffs in proptest::collection::vec(-4i64..=4, 3),
        ) {
            let rows = m.rows();
            let mut w = vec![BigInt::zero(); 3];
            for (c, row) in coeffs.iter().zip(&rows) {
                for (x, e) in w.iter_mut().zip(row) {
                    *x += BigInt::from(*c) * e;
                }
            }
            prop_assert!(m.lattice_contains(&RingVector::new(w)).unwrap());
        }
    }
}
