//! Injective code table standing in for the HASH of the refinement rules.

use rustc_hash::FxHashMap;

/// Encodes an empty multiset. Multiset lengths never reach this value.
pub const EMPTY_MULTISET: u32 = u32::MAX;

/// Leading word of every key, so keys of different kinds never collide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u32)]
pub(crate) enum Tag {
    Certificate = 1,
    Parts,
    HalfParallel,
    NewParallel,
    HalfSequential,
    NewSequential,
    NodeColor,
    NodeUpdate,
    AtomicType,
    TupleUpdate,
    FolkloreUpdate,
    MultisetInit,
    MultisetUpdate,
    SetFolkloreUpdate,
    SetUpdate,
}

/// Maps structural keys to dense codes in first-seen order.
#[derive(Debug, Default, Clone)]
pub struct ColorTable {
    codes: FxHashMap<Box<[u32]>, u32>,
}

impl ColorTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn code(&mut self, key: &[u32]) -> u32 {
        if let Some(&c) = self.codes.get(key) {
            return c;
        }
        let c = self.codes.len() as u32;
        self.codes.insert(key.into(), c);
        c
    }

    /// Assigns codes to `keys` in order.
    pub fn codes_for(&mut self, keys: &[Vec<u32>]) -> Vec<u32> {
        keys.iter().map(|k| self.code(k)).collect()
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }
}

/// Builder for length-prefixed keys.
#[derive(Debug, Default)]
pub(crate) struct Key(pub Vec<u32>);

impl Key {
    pub fn new(tag: Tag) -> Self {
        Key(vec![tag as u32])
    }

    pub fn push(&mut self, word: u32) -> &mut Self {
        self.0.push(word);
        self
    }

    /// Appends `items` as a multiset: sorted, length-prefixed.
    pub fn multiset(&mut self, items: &mut [u32]) -> &mut Self {
        if items.is_empty() {
            self.0.push(EMPTY_MULTISET);
        } else {
            items.sort_unstable();
            self.0.push(items.len() as u32);
            self.0.extend_from_slice(items);
        }
        self
    }

    /// Appends a multiset of fixed-width tuples, sorted lexicographically.
    pub fn multiset_of_tuples(&mut self, flat: &[u32], width: usize) -> &mut Self {
        if flat.is_empty() {
            self.0.push(EMPTY_MULTISET);
            return self;
        }
        let mut tuples: Vec<&[u32]> = flat.chunks_exact(width).collect();
        tuples.sort_unstable();
        self.0.push(tuples.len() as u32);
        for t in tuples {
            self.0.extend_from_slice(t);
        }
        self
    }

    pub fn finish(self) -> Vec<u32> {
        self.0
    }
}

/// Whether partition `fine` refines `coarse`: equal codes in `fine` imply
/// equal codes in `coarse`. Both are indexed by the same elements.
pub fn partition_refines(fine: &[u32], coarse: &[u32]) -> bool {
    assert_eq!(
        fine.len(),
        coarse.len(),
        "partitions over different element sets"
    );
    let mut image: FxHashMap<u32, u32> = FxHashMap::default();
    fine.iter()
        .zip(coarse)
        .all(|(&f, &c)| *image.entry(f).or_insert(c) == c)
}

/// Number of distinct codes.
pub fn class_count(codes: impl IntoIterator<Item = u32>) -> usize {
    let mut v: Vec<u32> = codes.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v.len()
}
