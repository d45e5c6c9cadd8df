//! Sign vectors over a finite ground set and canonically ordered systems of them.
//!
//! A sign vector assigns `+`, `0` or `-` to every element of the ground set. It is stored as a
//! pair of disjoint bit masks (positive part, negative part), so the ground set is limited to
//! [`MAX_GROUND_SIZE`] elements. All operations are pure.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported ground set; each half of a sign vector fits one `u64`.
pub const MAX_GROUND_SIZE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Zero,
    Minus,
}

impl Sign {
    pub fn to_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Zero => '0',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '0' => Some(Sign::Zero),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Zero => Sign::Zero,
            Sign::Minus => Sign::Plus,
        }
    }

    // Canonical rank: + < 0 < -
    fn rank(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Zero => 1,
            Sign::Minus => 2,
        }
    }
}

/// A set of ground-set indices, stored as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Self {
        ElementSet(low_mask(n))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        assert!(e < MAX_GROUND_SIZE, "element index {e} out of range");
        self.0 |= 1 << e;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & !other.0)
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }

    pub fn first(self) -> Option<usize> {
        self.iter().next()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = ElementSet::EMPTY;
        for e in iter {
            set.insert(e);
        }
        set
    }
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Element names for a ground set `E = {0, .., n-1}`. Labels are cosmetic; operations only ever
/// look at indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    /// Ground set of `n` elements labelled `e0 .. e{n-1}`.
    pub fn with_size(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGround("ground set must have at least one element".into()));
        }
        if n > MAX_GROUND_SIZE {
            return Err(Error::GroundTooLarge(n));
        }
        Ok(Self::default_labels(n))
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidGround("ground set must have at least one element".into()));
        }
        if labels.len() > MAX_GROUND_SIZE {
            return Err(Error::GroundTooLarge(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() || label.contains(|c: char| c == ',' || c.is_whitespace()) {
                return Err(Error::InvalidGround(format!("invalid element label {label:?}")));
            }
            if labels[..i].contains(label) {
                return Err(Error::InvalidGround(format!("duplicate element label {label:?}")));
            }
        }
        Ok(GroundSet { labels })
    }

    // Contraction by the whole ground set leaves nothing behind; that is the only way to get here
    // with n = 0.
    pub(crate) fn default_labels(n: usize) -> Self {
        GroundSet { labels: (0..n).map(|i| format!("e{i}")).collect() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn has_default_labels(&self) -> bool {
        self.labels.iter().enumerate().all(|(i, l)| *l == format!("e{i}"))
    }

    /// Parses a comma-separated list of labels (or bare indices) into an element set.
    pub fn parse_elements(&self, text: &str) -> Result<ElementSet> {
        let mut set = ElementSet::EMPTY;
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let e = match self.index_of(item) {
                Some(e) => e,
                None => match item.parse::<usize>() {
                    Ok(e) if e < self.len() => e,
                    _ => return Err(Error::parse(0, format!("unknown ground-set element {item:?}"))),
                },
            };
            set.insert(e);
        }
        Ok(set)
    }
}

/// A signed set `X = (X+, X-)` over a ground set of `len` elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    plus: u64,
    minus: u64,
    len: u8,
}

impl SignVector {
    /// The all-zero vector, i.e. the empty signed set.
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_GROUND_SIZE, "ground set too large");
        SignVector { plus: 0, minus: 0, len: len as u8 }
    }

    pub fn from_parts(len: usize, plus: ElementSet, minus: ElementSet) -> Result<Self> {
        if len > MAX_GROUND_SIZE {
            return Err(Error::GroundTooLarge(len));
        }
        let mask = low_mask(len);
        if plus.bits() & minus.bits() != 0 {
            return Err(Error::InvalidVector("positive and negative parts overlap".into()));
        }
        if (plus.bits() | minus.bits()) & !mask != 0 {
            return Err(Error::InvalidVector("element index outside the ground set".into()));
        }
        Ok(SignVector { plus: plus.bits(), minus: minus.bits(), len: len as u8 })
    }

    pub fn from_signs(signs: &[Sign]) -> Result<Self> {
        if signs.len() > MAX_GROUND_SIZE {
            return Err(Error::GroundTooLarge(signs.len()));
        }
        let mut v = SignVector::zero(signs.len());
        for (e, s) in signs.iter().enumerate() {
            match s {
                Sign::Plus => v.plus |= 1 << e,
                Sign::Minus => v.minus |= 1 << e,
                Sign::Zero => {}
            }
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, e: usize) -> Sign {
        assert!(e < self.len(), "element {e} outside ground set of size {}", self.len);
        if self.plus >> e & 1 == 1 {
            Sign::Plus
        } else if self.minus >> e & 1 == 1 {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len()).map(move |e| self.get(e))
    }

    pub fn positive(&self) -> ElementSet {
        ElementSet(self.plus)
    }

    pub fn negative(&self) -> ElementSet {
        ElementSet(self.minus)
    }

    pub(crate) fn plus_bits(&self) -> u64 {
        self.plus
    }

    pub(crate) fn minus_bits(&self) -> u64 {
        self.minus
    }

    pub(crate) fn support_bits(&self) -> u64 {
        self.plus | self.minus
    }

    /// `X+ ∪ X-`.
    pub fn support(&self) -> ElementSet {
        ElementSet(self.plus | self.minus)
    }

    /// `E \ support(X)`.
    pub fn zero_support(&self) -> ElementSet {
        ElementSet(low_mask(self.len()) & !(self.plus | self.minus))
    }

    pub fn is_zero(&self) -> bool {
        self.plus | self.minus == 0
    }

    pub fn negate(&self) -> SignVector {
        SignVector { plus: self.minus, minus: self.plus, len: self.len }
    }

    fn check_same_ground(&self, other: &SignVector) -> Result<()> {
        if self.len != other.len {
            Err(Error::GroundMismatch { left: self.len(), right: other.len() })
        } else {
            Ok(())
        }
    }

    /// `S(X, Y) = (X+ ∩ Y-) ∪ (X- ∩ Y+)`.
    pub fn separator(&self, other: &SignVector) -> Result<ElementSet> {
        self.check_same_ground(other)?;
        Ok(ElementSet(self.separator_bits(other)))
    }

    pub(crate) fn separator_bits(&self, other: &SignVector) -> u64 {
        (self.plus & other.minus) | (self.minus & other.plus)
    }

    /// `X ∘ Y`: takes `X(e)` where it is nonzero and `Y(e)` elsewhere.
    pub fn compose(&self, other: &SignVector) -> Result<SignVector> {
        self.check_same_ground(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &SignVector) -> SignVector {
        let supp = self.plus | self.minus;
        SignVector { plus: self.plus | (other.plus & !supp), minus: self.minus | (other.minus & !supp), len: self.len }
    }

    /// Left fold of [`SignVector::compose`]; the empty sequence gives the zero vector.
    pub fn compose_seq<'a, I>(len: usize, vectors: I) -> Result<SignVector>
    where
        I: IntoIterator<Item = &'a SignVector>,
    {
        if len > MAX_GROUND_SIZE {
            return Err(Error::GroundTooLarge(len));
        }
        vectors.into_iter().try_fold(SignVector::zero(len), |acc, v| acc.compose(v))
    }

    /// Conformal order: `self ≤ other` iff `S(other, self) = ∅` and `support(self) ⊆ support(other)`.
    pub fn leq(&self, other: &SignVector) -> Result<bool> {
        self.check_same_ground(other)?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &SignVector) -> bool {
        self.plus & !other.plus == 0 && self.minus & !other.minus == 0
    }

    /// Number of elements with nonzero sign.
    pub fn support_size(&self) -> usize {
        (self.plus | self.minus).count_ones() as usize
    }

    /// Keeps the elements of `keep` (in increasing order) and drops the rest.
    pub fn restrict(&self, keep: ElementSet) -> SignVector {
        let mut out = SignVector::zero(keep.len());
        for (i, e) in keep.iter().enumerate() {
            if self.plus >> e & 1 == 1 {
                out.plus |= 1 << i;
            } else if self.minus >> e & 1 == 1 {
                out.minus |= 1 << i;
            }
        }
        out
    }

    /// Canonical comparison: lexicographic on the sign sequence with `+ < 0 < -`.
    fn canonical_cmp(&self, other: &SignVector) -> Ordering {
        let diff = (self.plus ^ other.plus) | (self.minus ^ other.minus);
        if diff == 0 {
            return self.len.cmp(&other.len);
        }
        let e = diff.trailing_zeros() as usize;
        let a = if e < self.len() { self.get(e) } else { Sign::Zero };
        let b = if e < other.len() { other.get(e) } else { Sign::Zero };
        a.rank().cmp(&b.rank())
    }
}

impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.signs() {
            write!(f, "{}", s.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector(\"{self}\")")
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| {
                Sign::from_char(c).ok_or_else(|| Error::parse(0, format!("invalid sign character {c:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if signs.is_empty() {
            return Err(Error::parse(0, "empty sign vector"));
        }
        SignVector::from_signs(&signs)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A deduplicated, canonically sorted set of sign vectors on one ground set; the candidate
/// cocircuit set `C*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignSystem {
    ground: GroundSet,
    members: Vec<SignVector>,
}

impl SignSystem {
    pub fn new<I: IntoIterator<Item = SignVector>>(ground: GroundSet, members: I) -> Result<Self> {
        let mut members: Vec<SignVector> = members.into_iter().collect();
        if let Some(bad) = members.iter().find(|v| v.len() != ground.len()) {
            return Err(Error::GroundMismatch { left: ground.len(), right: bad.len() });
        }
        members.sort_unstable();
        members.dedup();
        Ok(SignSystem { ground, members })
    }

    pub fn empty(ground: GroundSet) -> Self {
        SignSystem { ground, members: Vec::new() }
    }

    /// Builds a system with default labels from sign strings; mostly for tests and examples.
    pub fn from_strs<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        let members = items.iter().map(|s| s.as_ref().parse()).collect::<Result<Vec<SignVector>>>()?;
        let n = match members.first() {
            Some(v) => v.len(),
            None => return Err(Error::InvalidGround("cannot infer ground set of an empty list".into())),
        };
        SignSystem::new(GroundSet::with_size(n)?, members)
    }

    pub(crate) fn from_sorted_unchecked(ground: GroundSet, members: Vec<SignVector>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SignSystem { ground, members }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn ground_size(&self) -> usize {
        self.ground.len()
    }

    pub fn members(&self) -> &[SignVector] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SignVector> {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: &SignVector) -> bool {
        self.index_of(v).is_some()
    }

    pub fn index_of(&self, v: &SignVector) -> Option<usize> {
        self.members.binary_search(v).ok()
    }

    /// `-C*`.
    pub fn negated(&self) -> SignSystem {
        let members = self.members.iter().map(SignVector::negate);
        SignSystem::new(self.ground.clone(), members).expect("negation preserves the ground set")
    }

    pub fn with_ground(self, ground: GroundSet) -> Result<SignSystem> {
        if ground.len() != self.ground.len() {
            return Err(Error::GroundMismatch { left: ground.len(), right: self.ground.len() });
        }
        Ok(SignSystem { ground, members: self.members })
    }

    /// Parses the line-oriented system format: an optional `# ground: a,b,c` header, then one
    /// sign string per line. Blank lines and other `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut ground: Option<GroundSet> = None;
        let mut members = Vec::new();
        let mut width: Option<usize> = None;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(list) = comment.trim_start().strip_prefix("ground:") {
                    if ground.is_some() || !members.is_empty() {
                        return Err(Error::parse(lineno, "ground header must come first and only once"));
                    }
                    let labels: Vec<String> =
                        list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                    let g = GroundSet::with_labels(labels).map_err(|e| match e {
                        Error::InvalidGround(msg) => Error::parse(lineno, msg),
                        other => other,
                    })?;
                    width = Some(g.len());
                    ground = Some(g);
                }
                continue;
            }
            if line.chars().count() > MAX_GROUND_SIZE {
                return Err(Error::GroundTooLarge(line.chars().count()));
            }
            let v: SignVector = line.parse().map_err(|e| match e {
                Error::Parse { message, .. } => Error::parse(lineno, message),
                other => other,
            })?;
            match width {
                Some(w) if w != v.len() => {
                    return Err(Error::parse(
                        lineno,
                        format!("sign vector {line:?} has length {}, expected {w}", v.len()),
                    ))
                }
                Some(_) => {}
                None => width = Some(v.len()),
            }
            members.push(v);
        }
        let ground = match (ground, width) {
            (Some(g), _) => g,
            (None, Some(w)) => GroundSet::with_size(w)?,
            (None, None) => {
                return Err(Error::parse(0, "empty system without a ground header"));
            }
        };
        SignSystem::new(ground, members)
    }

    /// Serializes in the format read by [`SignSystem::parse`]. The header is written only when it
    /// carries information: non-default labels, or an empty member list.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.members.is_empty() || !self.ground.has_default_labels() {
            out.push_str("# ground: ");
            out.push_str(&self.ground.labels().join(","));
            out.push('\n');
        }
        for v in &self.members {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }
}

impl FromStr for SignSystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SignSystem::parse(s)
    }
}

impl<'a> IntoIterator for &'a SignSystem {
    type Item = &'a SignVector;
    type IntoIter = std::slice::Iter<'a, SignVector>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
