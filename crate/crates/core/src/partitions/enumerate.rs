use super::{Partition, PartitionError};

/// Largest order accepted for non-crossing enumeration (|NC(14)| = 2674440).
pub const NC_CAP: usize = 14;
/// Largest order accepted for enumeration of all set partitions (Bell(11) = 678570).
pub const ALL_CAP: usize = 11;
/// Largest order accepted for interval partitions (2^19 compositions).
pub const INTERVAL_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionClass {
    All,
    NonCrossing,
    Interval,
    EvenNonCrossing,
}

/// All partitions of the class, in lexicographic order of restricted growth strings.
pub fn enumerate(n: usize, class: PartitionClass) -> Result<Vec<Partition>, PartitionError> {
    let cap = match class {
        PartitionClass::All => ALL_CAP,
        PartitionClass::NonCrossing | PartitionClass::EvenNonCrossing => NC_CAP,
        PartitionClass::Interval => INTERVAL_CAP,
    };
    if n == 0 || n > cap {
        return Err(PartitionError::CapExceeded(n, cap));
    }
    Ok(match class {
        PartitionClass::All => growth_strings(n, false),
        PartitionClass::NonCrossing => growth_strings(n, true),
        PartitionClass::EvenNonCrossing => {
            if n % 2 == 1 {
                Vec::new()
            } else {
                growth_strings(n, true).into_iter().filter(Partition::is_even).collect()
            }
        }
        PartitionClass::Interval => {
            let mut out: Vec<Partition> = (0..1usize << (n - 1))
                .map(|cuts| {
                    let mut label = 0;
                    let labels: Vec<usize> = (0..n)
                        .map(|i| {
                            if i > 0 && cuts >> (i - 1) & 1 == 1 {
                                label += 1;
                            }
                            label
                        })
                        .collect();
                    Partition::from_labels(&labels)
                })
                .collect();
            out.sort_by_cached_key(Partition::labels);
            out
        }
    })
}

struct Growth {
    n: usize,
    noncrossing: bool,
    labels: Vec<usize>,
    last: Vec<usize>,
    closed: Vec<bool>,
    out: Vec<Partition>,
}

impl Growth {
    fn step(&mut self, i: usize) {
        if i == self.n {
            self.out.push(Partition::from_labels(&self.labels));
            return;
        }
        for b in 0..self.last.len() {
            if self.closed[b] {
                continue;
            }
            // Joining b hides every block opened after b's last element.
            let mut newly_closed = Vec::new();
            if self.noncrossing {
                for c in 0..self.last.len() {
                    if c != b && !self.closed[c] && self.last[c] > self.last[b] {
                        self.closed[c] = true;
                        newly_closed.push(c);
                    }
                }
            }
            let saved = self.last[b];
            self.last[b] = i;
            self.labels.push(b);
            self.step(i + 1);
            self.labels.pop();
            self.last[b] = saved;
            for c in newly_closed {
                self.closed[c] = false;
            }
        }
        let fresh = self.last.len();
        self.last.push(i);
        self.closed.push(false);
        self.labels.push(fresh);
        self.step(i + 1);
        self.labels.pop();
        self.last.pop();
        self.closed.pop();
    }
}

fn growth_strings(n: usize, noncrossing: bool) -> Vec<Partition> {
    let mut g = Growth { n, noncrossing, labels: Vec::new(), last: Vec::new(), closed: Vec::new(), out: Vec::new() };
    g.step(0);
    g.out
}
