//! Incremental segmented sieve of Eratosthenes.

/// Primes up to `bound`, extended segment by segment.
#[derive(Debug, Clone)]
pub struct SegmentedSieve {
    bound: u64,
    primes: Vec<u64>,
}

impl Default for SegmentedSieve {
    fn default() -> Self {
        Self::new()
    }
}

impl SegmentedSieve {
    pub fn new() -> Self {
        SegmentedSieve {
            bound: 1,
            primes: Vec::new(),
        }
    }

    /// Largest integer sieved so far.
    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Sieves `(bound, new_bound]` and returns the newly found primes.
    pub fn extend_to(&mut self, new_bound: u64) -> &[u64] {
        let start = self.primes.len();
        if new_bound <= self.bound {
            return &self.primes[start..];
        }
        let lo = self.bound + 1;
        let len = (new_bound - lo + 1) as usize;
        let mut composite = vec![false; len];

        // base primes up to sqrt(new_bound); any missing ones are found by
        // sieving the small prefix of this very segment first
        let root = integer_sqrt(new_bound);
        let mut base: Vec<u64> = self.primes.iter().copied().take_while(|&p| p <= root).collect();
        if self.bound < root {
            let mut small = SegmentedSieve {
                bound: self.bound,
                primes: self.primes.clone(),
            };
            small.extend_to(root);
            base = small.primes.clone();
        }

        for &p in &base {
            let first = (lo.div_ceil(p) * p).max(p * p);
            let mut m = first;
            while m <= new_bound {
                composite[(m - lo) as usize] = true;
                m += p;
            }
        }
        for (i, &c) in composite.iter().enumerate() {
            let n = lo + i as u64;
            if n >= 2 && !c {
                self.primes.push(n);
            }
        }
        self.bound = new_bound;
        &self.primes[start..]
    }
}

fn integer_sqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
