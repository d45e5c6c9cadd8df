//! Instance factories: realizable cocircuit systems from integer vector configurations, uniform
//! families, and seeded negative/fuzz corpora.

pub mod exact;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axioms::check_all;
use crate::error::{Error, Result};
use crate::sign::{GroundSet, SignSystem, SignVector, MAX_GROUND_SIZE};

/// Hyperplane enumeration above this many column subsets is refused.
const MAX_SUBSETS: u128 = 2_000_000;
const RESTART_AFTER: usize = 200;
const SAMPLING_ATTEMPTS: usize = 100_000;

/// `n` integer column vectors in `Z^r`, stored row-wise as an `r × n` matrix of full rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorConfiguration {
    rows: Vec<Vec<i64>>,
}

impl VectorConfiguration {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Parameter("matrix has no rows".into()));
        }
        let n = rows[0].len();
        if n == 0 || rows.iter().any(|row| row.len() != n) {
            return Err(Error::Parameter("matrix rows must be nonempty and of equal length".into()));
        }
        if n > MAX_GROUND_SIZE {
            return Err(Error::GroundTooLarge(n));
        }
        if r > n {
            return Err(Error::RankMismatch { expected: r, found: exact::rank(&rows) });
        }
        if let Some(j) = (0..n).find(|&j| rows.iter().all(|row| row[j] == 0)) {
            return Err(Error::ZeroColumn(j));
        }
        let found = exact::rank(&rows);
        if found != r {
            return Err(Error::RankMismatch { expected: r, found });
        }
        Ok(VectorConfiguration { rows })
    }

    pub fn from_columns(columns: &[Vec<i64>]) -> Result<Self> {
        let r = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != r) {
            return Err(Error::Parameter("columns must have equal length".into()));
        }
        let rows = (0..r).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        VectorConfiguration::new(rows)
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.rows[0].len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|row| row[j]).collect()
    }

    /// Whitespace-separated integers, one matrix row per line; blank lines and `#` comments are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| tok.parse::<i64>().map_err(|_| Error::parse(i + 1, format!("invalid integer {tok:?}"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        VectorConfiguration::new(rows)
    }
}

impl FromStr for VectorConfiguration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VectorConfiguration::parse(s)
    }
}

impl fmt::Display for VectorConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let items: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", items.join(" "))?;
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Normal functional of the hyperplane spanned by the given `r - 1` columns: the generalized cross
/// product `c_i = (-1)^i det(B without row i)`, scaled to a primitive vector whose first nonzero
/// entry is positive. `None` when the columns are dependent.
fn hyperplane_normal(config: &VectorConfiguration, columns: &[usize]) -> Option<Vec<BigInt>> {
    let r = config.rank();
    let mut normal = Vec::with_capacity(r);
    for skip in 0..r {
        let minor: Vec<Vec<i64>> =
            (0..r).filter(|&i| i != skip).map(|i| columns.iter().map(|&j| config.rows[i][j]).collect()).collect();
        let d = exact::determinant(&minor);
        normal.push(if skip % 2 == 0 { d } else { -d });
    }
    let g = normal.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return None;
    }
    let first_negative = normal.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    for x in &mut normal {
        *x /= &g;
        if first_negative {
            *x = -&*x;
        }
    }
    Some(normal)
}

/// Cocircuits of the oriented matroid realized by the columns of `config`: for each hyperplane
/// spanned by columns, the sign pattern of every column under its normal functional, and its
/// negation.
pub fn from_matrix(config: &VectorConfiguration) -> Result<SignSystem> {
    let r = config.rank();
    let n = config.len();
    if binomial(n, r - 1) > MAX_SUBSETS {
        return Err(Error::Parameter(format!("too many column subsets: C({n}, {})", r - 1)));
    }
    let columns: Vec<Vec<BigInt>> = (0..n).map(|j| config.column(j).into_iter().map(BigInt::from).collect()).collect();
    let mut normals: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for_each_subset(n, r - 1, |subset| {
        if let Some(normal) = hyperplane_normal(config, subset) {
            normals.insert(normal);
        }
    });
    let mut members = Vec::with_capacity(2 * normals.len());
    for normal in &normals {
        let signs: Vec<crate::sign::Sign> = columns
            .iter()
            .map(|col| {
                let dot: BigInt = normal.iter().zip(col).map(|(a, b)| a * b).sum();
                match exact::sign_of(&dot) {
                    1 => crate::sign::Sign::Plus,
                    -1 => crate::sign::Sign::Minus,
                    _ => crate::sign::Sign::Zero,
                }
            })
            .collect();
        let v = SignVector::from_signs(&signs)?;
        members.push(v);
        members.push(v.negate());
    }
    let system = SignSystem::new(GroundSet::with_size(n)?, members)?;
    debug_assert!(check_all(&system).is_pass(), "realizable system fails the cocircuit axioms");
    Ok(system)
}

/// Columns `(1,0), (0,1), (1,1), (1,2), …, (1,n-2)`: pairwise independent plane vectors.
pub fn u2n_configuration(n: usize) -> Result<VectorConfiguration> {
    if n < 2 {
        return Err(Error::Parameter(format!("u2n needs n >= 2, got {n}")));
    }
    let mut columns = vec![vec![1, 0], vec![0, 1]];
    columns.extend((1..n as i64 - 1).map(|k| vec![1, k]));
    VectorConfiguration::from_columns(&columns)
}

/// The uniform rank-2 oriented matroid on `n` elements.
pub fn u2n(n: usize) -> Result<SignSystem> {
    from_matrix(&u2n_configuration(n)?)
}

/// Moment-curve columns `(1, t, …, t^{r-1})` for `t = 1..n`.
pub fn cyclic_configuration(r: usize, n: usize) -> Result<VectorConfiguration> {
    if !(2 <= r && r <= n && n <= 10) {
        return Err(Error::Parameter(format!("cyclic needs 2 <= r <= n <= 10, got r={r}, n={n}")));
    }
    let columns: Vec<Vec<i64>> = (1..=n as i64).map(|t| (0..r as u32).map(|k| t.pow(k)).collect()).collect();
    VectorConfiguration::from_columns(&columns)
}

/// The alternating (cyclic polytope) uniform oriented matroid of rank `r` on `n` elements.
pub fn cyclic(r: usize, n: usize) -> Result<SignSystem> {
    let system = from_matrix(&cyclic_configuration(r, n)?)?;
    assert_eq!(system.len() as u128, 2 * binomial(n, r - 1), "moment curve is not in general position");
    assert!(system.iter().all(|x| x.zero_support().len() == r - 1));
    Ok(system)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Remove a random antipodal pair `±X`.
    DropPair,
    /// Flip one entry of a random member `X` and of `-X` symmetrically.
    FlipEntry,
    /// Insert a random antipodal pair.
    AddRandom,
}

impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "drop-pair" => Ok(Mutation::DropPair),
            "flip-entry" => Ok(Mutation::FlipEntry),
            "add-random" => Ok(Mutation::AddRandom),
            _ => Err(Error::Parameter(format!("unknown mutation {s:?}"))),
        }
    }
}

fn random_nonzero(rng: &mut ChaCha8Rng, n: usize) -> SignVector {
    loop {
        let signs: Vec<crate::sign::Sign> = (0..n)
            .map(|_| match rng.gen_range(0..3) {
                0 => crate::sign::Sign::Plus,
                1 => crate::sign::Sign::Zero,
                _ => crate::sign::Sign::Minus,
            })
            .collect();
        let v = SignVector::from_signs(&signs).expect("n is within bounds");
        if !v.is_zero() {
            return v;
        }
    }
}

/// Applies one seeded mutation. The result is not filtered; callers re-check (C0)–(C2).
pub fn mutate(system: &SignSystem, kind: Mutation, seed: u64) -> Result<SignSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = system.ground_size();
    let mut members = system.members().to_vec();
    match kind {
        Mutation::DropPair | Mutation::FlipEntry if members.is_empty() => {
            return Err(Error::Parameter("cannot mutate an empty system".into()))
        }
        Mutation::DropPair => {
            let x = members[rng.gen_range(0..members.len())];
            members.retain(|v| *v != x && *v != x.negate());
        }
        Mutation::FlipEntry => {
            let x = members[rng.gen_range(0..members.len())];
            let e = rng.gen_range(0..n);
            let mut signs: Vec<crate::sign::Sign> = x.signs().collect();
            signs[e] = match signs[e] {
                crate::sign::Sign::Zero if rng.gen_bool(0.5) => crate::sign::Sign::Plus,
                crate::sign::Sign::Zero => crate::sign::Sign::Minus,
                s => s.negate(),
            };
            let flipped = SignVector::from_signs(&signs)?;
            members.retain(|v| *v != x && *v != x.negate());
            members.push(flipped);
            members.push(flipped.negate());
        }
        Mutation::AddRandom => {
            let y = random_nonzero(&mut rng, n);
            members.push(y);
            members.push(y.negate());
        }
    }
    SignSystem::new(system.ground().clone(), members)
}

/// Rejection-samples `pairs` antipodal pairs of nonzero sign vectors on `n` elements such that
/// the result satisfies (C0)–(C2).
pub fn random_c0c2(n: usize, pairs: usize, seed: u64) -> Result<SignSystem> {
    if n == 0 || n > 12 {
        return Err(Error::Parameter(format!("random_c0c2 needs 1 <= n <= 12, got {n}")));
    }
    if pairs > 200 {
        return Err(Error::Parameter(format!("random_c0c2 allows at most 200 pairs, got {pairs}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen: Vec<SignVector> = Vec::with_capacity(pairs);
    let mut attempts = 0;
    let mut rejected_in_a_row = 0;
    while chosen.len() < pairs {
        attempts += 1;
        if attempts > SAMPLING_ATTEMPTS {
            return Err(Error::SamplingExhausted(SAMPLING_ATTEMPTS));
        }
        let x = random_nonzero(&mut rng, n);
        let clash = chosen.iter().any(|y| {
            let (sx, sy) = (x.support(), y.support());
            sx.is_subset(sy) || sy.is_subset(sx)
        });
        if !clash {
            chosen.push(x);
            rejected_in_a_row = 0;
        } else {
            rejected_in_a_row += 1;
            // Early picks can block every extension; start over.
            if rejected_in_a_row == RESTART_AFTER {
                chosen.clear();
                rejected_in_a_row = 0;
            }
        }
    }
    let members = chosen.iter().flat_map(|x| [*x, x.negate()]);
    SignSystem::new(GroundSet::with_size(n)?, members)
}

/// Whether every member has a zero-support of the same size.
pub fn is_uniform(system: &SignSystem) -> bool {
    let mut sizes = system.iter().map(|x| x.zero_support().len());
    match sizes.next() {
        Some(first) => sizes.all(|s| s == first),
        None => true,
    }
}
