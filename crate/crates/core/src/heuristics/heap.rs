use crate::ground::AtomId;

/// Binary max-heap of atoms keyed by activity, ties broken towards the lower atom id.
///
/// Activities are stored for every atom ever touched, whether or not it is in the heap.
#[derive(Debug, Clone, Default)]
pub struct ActivityHeap {
    heap: Vec<AtomId>,
    /// Heap index per atom, `usize::MAX` when absent.
    positions: Vec<usize>,
    activity: Vec<f64>,
}

const ABSENT: usize = usize::MAX;

impl ActivityHeap {
    pub fn new() -> Self {
        Self::default()
    }

    fn grow(&mut self, atom: AtomId) {
        if self.positions.len() <= atom.index() {
            self.positions.resize(atom.index() + 1, ABSENT);
            self.activity.resize(atom.index() + 1, 0.0);
        }
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn contains(&self, atom: AtomId) -> bool {
        self.positions.get(atom.index()).is_some_and(|&p| p != ABSENT)
    }

    pub fn activity(&self, atom: AtomId) -> f64 {
        self.activity.get(atom.index()).copied().unwrap_or(0.0)
    }

    pub fn members(&self) -> &[AtomId] {
        &self.heap
    }

    #[inline]
    fn before(&self, a: AtomId, b: AtomId) -> bool {
        let (x, y) = (self.activity[a.index()], self.activity[b.index()]);
        x > y || (x == y && a < b)
    }

    pub fn insert(&mut self, atom: AtomId) {
        self.grow(atom);
        if self.contains(atom) {
            return;
        }
        self.positions[atom.index()] = self.heap.len();
        self.heap.push(atom);
        self.sift_up(self.heap.len() - 1);
    }

    pub fn peek(&self) -> Option<AtomId> {
        self.heap.first().copied()
    }

    pub fn pop(&mut self) -> Option<AtomId> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().expect("non-empty heap");
        self.positions[top.index()] = ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.positions[last.index()] = 0;
            self.sift_down(0);
        }
        Some(top)
    }

    /// Sets the activity of `atom`, restoring heap order if it is a member.
    pub fn set_activity(&mut self, atom: AtomId, activity: f64) {
        self.grow(atom);
        let old = self.activity[atom.index()];
        self.activity[atom.index()] = activity;
        let pos = self.positions[atom.index()];
        if pos != ABSENT {
            if activity >= old {
                self.sift_up(pos);
            } else {
                self.sift_down(pos);
            }
        }
    }

    /// Divides every stored activity by `divisor`. Heap order is unaffected.
    pub fn scale_down(&mut self, divisor: f64) {
        for a in &mut self.activity {
            *a /= divisor;
        }
    }

    fn sift_up(&mut self, mut i: usize) {
        let atom = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let p = self.heap[parent];
            if !self.before(atom, p) {
                break;
            }
            self.heap[i] = p;
            self.positions[p.index()] = i;
            i = parent;
        }
        self.heap[i] = atom;
        self.positions[atom.index()] = i;
    }

    fn sift_down(&mut self, mut i: usize) {
        let atom = self.heap[i];
        loop {
            let left = 2 * i + 1;
            if left >= self.heap.len() {
                break;
            }
            let right = left + 1;
            let child = if right < self.heap.len() && self.before(self.heap[right], self.heap[left])
            {
                right
            } else {
                left
            };
            let c = self.heap[child];
            if !self.before(c, atom) {
                break;
            }
            self.heap[i] = c;
            self.positions[c.index()] = i;
            i = child;
        }
        self.heap[i] = atom;
        self.positions[atom.index()] = i;
    }
}
