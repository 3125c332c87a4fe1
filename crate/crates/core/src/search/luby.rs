/// Luby sequence generator using reluctant doubling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReluctantDoubling {
    u: u64,
    v: u64,
}

impl Default for ReluctantDoubling {
    fn default() -> Self {
        ReluctantDoubling { u: 1, v: 1 }
    }
}

impl ReluctantDoubling {
    pub fn new() -> Self {
        Self::default()
    }

    /// The current pair `(u, v)`.
    pub fn pair(&self) -> (u64, u64) {
        (self.u, self.v)
    }

    /// The value the next call to [`ReluctantDoubling::next_value`] returns.
    pub fn current(&self) -> u64 {
        self.v
    }

    pub fn next_value(&mut self) -> u64 {
        let out = self.v;
        if self.u & self.u.wrapping_neg() == self.v {
            self.u += 1;
            self.v = 1;
        } else {
            self.v *= 2;
        }
        out
    }
}

impl Iterator for ReluctantDoubling {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        Some(self.next_value())
    }
}
