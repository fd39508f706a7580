//! Cutoff sequences for restarts, counted in wrong decisions.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RestartPolicy {
    #[default]
    Geometric,
    Luby,
}

/// `i`-th element (from 1) of the Luby sequence 1,1,2,1,1,2,4,1,...
pub fn luby(i: u64) -> u64 {
    assert!(i >= 1);
    let mut i = i;
    loop {
        // smallest k with 2^k - 1 >= i
        let k = 64 - i.leading_zeros() as u64;
        if i == (1u64 << k) - 1 {
            return 1 << (k - 1);
        }
        i -= (1u64 << (k - 1)) - 1;
    }
}

#[derive(Debug, Clone)]
pub struct Restarter {
    pub policy: RestartPolicy,
    pub base: u64,
    pub factor: f64,
    run: u64,
}

impl Restarter {
    pub fn new(policy: RestartPolicy, base: u64, factor: f64) -> Self {
        Self { policy, base, factor, run: 0 }
    }

    /// Number of runs whose cutoff has been handed out.
    pub fn runs(&self) -> u64 {
        self.run
    }

    pub fn reset(&mut self) {
        self.run = 0;
    }

    /// Cutoff of run `run` (from 0).
    pub fn cutoff(&self, run: u64) -> u64 {
        match self.policy {
            RestartPolicy::Geometric => {
                let c = self.base as f64 * self.factor.powi(run.min(i32::MAX as u64) as i32);
                if c >= u64::MAX as f64 {
                    u64::MAX
                } else {
                    // tolerate the representation error of products like 100·1.1²
                    (c + 1e-9).floor() as u64
                }
            }
            RestartPolicy::Luby => self.base.saturating_mul(luby(run + 1)),
        }
    }

    pub fn next_cutoff(&mut self) -> u64 {
        let c = self.cutoff(self.run);
        self.run += 1;
        c
    }
}
