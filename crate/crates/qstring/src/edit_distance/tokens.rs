//! Token budgets and the quota scheduler of the recursive edit-distance
//! solver.
//!
//! Every recursion node burns q-tokens (standing for queries) and t-tokens
//! (standing for time). A program — the pair of child calls of a node — runs
//! under quotas; a burn that would push any enclosing program over its quota
//! is refused and the nearest such program is paused.

/// `⌈log₂ m⌉` with `⌈log₂ 1⌉ = 0`.
pub fn ceil_log2(m: usize) -> u32 {
    if m <= 1 {
        0
    } else {
        usize::BITS - (m - 1).leading_zeros()
    }
}

/// Radix `ρ = ⌈5·log₂ max(n, 2)⌉` of the threshold sequence `ρ^{2i+2}`.
pub fn radix_for(n: usize) -> u64 {
    (5.0 * (n.max(2) as f64).log2()).ceil() as u64
}

/// Budget functions for a fixed radix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TokenBudget {
    pub rho: u64,
}

impl TokenBudget {
    pub fn new(rho: u64) -> Self {
        assert!(rho >= 2, "radix must be at least 2");
        TokenBudget { rho }
    }

    fn growth(&self, x_len: usize) -> f64 {
        let r = self.rho as f64;
        ((r + 2.0) / r).powi(ceil_log2(x_len) as i32)
    }

    /// `T_q = 10·√(d(|X|+|Y|))·ρ³·((ρ+2)/ρ)^⌈log₂|X|⌉`.
    pub fn t_q(&self, x_len: usize, y_len: usize, d: f64) -> f64 {
        let r = self.rho as f64;
        10.0 * (d * (x_len + y_len) as f64).sqrt() * r.powi(3) * self.growth(x_len)
    }

    /// `T_t = 10·d²·ρ⁹·((ρ+2)/ρ)^⌈log₂|X|⌉`.
    pub fn t_t(&self, x_len: usize, _y_len: usize, d: f64) -> f64 {
        let r = self.rho as f64;
        10.0 * d * d * r.powi(9) * self.growth(x_len)
    }

    /// Threshold `ρ^{2i+2}` of iteration `i`, as a real number.
    pub fn threshold(&self, i: u32) -> f64 {
        (self.rho as f64).powi(2 * i as i32 + 2)
    }

    /// The same threshold as an integer, saturating.
    pub fn threshold_int(&self, i: u32) -> u64 {
        self.rho.checked_pow(2 * i + 2).unwrap_or(u64::MAX)
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct ProgramState {
    used_q: f64,
    used_t: f64,
    quota_q: f64,
    quota_t: f64,
}

/// Quota bookkeeping for live programs and per-node burn totals.
#[derive(Debug, Default)]
pub struct TokenScheduler {
    programs: Vec<ProgramState>,
    program_stack: Vec<usize>,
    node_stack: Vec<usize>,
    node_burn: Vec<(f64, f64)>,
    pause_target: Option<usize>,
    pub pauses: u64,
    pub terminations: u64,
}

impl TokenScheduler {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn new_program(&mut self) -> usize {
        self.programs.push(ProgramState::default());
        self.programs.len() - 1
    }

    pub fn set_quota(&mut self, program: usize, q: f64, t: f64) {
        let p = &mut self.programs[program];
        p.quota_q = q;
        p.quota_t = t;
    }

    pub fn used(&self, program: usize) -> (f64, f64) {
        let p = &self.programs[program];
        (p.used_q, p.used_t)
    }

    pub fn new_node(&mut self) -> usize {
        self.node_burn.push((0.0, 0.0));
        self.node_burn.len() - 1
    }

    /// Tokens burnt so far by a node and everything it ran.
    pub fn node_burn(&self, node: usize) -> (f64, f64) {
        self.node_burn[node]
    }

    pub fn enter_program(&mut self, program: usize) {
        self.program_stack.push(program);
    }

    pub fn leave_program(&mut self) {
        self.program_stack.pop();
    }

    pub fn enter_node(&mut self, node: usize) {
        self.node_stack.push(node);
    }

    pub fn leave_node(&mut self) {
        self.node_stack.pop();
    }

    /// Burns `q` and `t` tokens if every running program can afford them.
    /// Otherwise nothing is burnt, the nearest program that cannot afford
    /// them is marked for pausing, and `false` is returned.
    pub fn try_burn(&mut self, q: f64, t: f64) -> bool {
        for &id in self.program_stack.iter().rev() {
            let p = &self.programs[id];
            if p.used_q + q > p.quota_q || p.used_t + t > p.quota_t {
                self.pause_target = Some(id);
                return false;
            }
        }
        for &id in &self.program_stack {
            let p = &mut self.programs[id];
            p.used_q += q;
            p.used_t += t;
        }
        for &n in &self.node_stack {
            let b = &mut self.node_burn[n];
            b.0 += q;
            b.1 += t;
        }
        true
    }

    /// Whether `program` is the one marked for pausing; clears the mark.
    pub fn take_pause(&mut self, program: usize) -> bool {
        if self.pause_target == Some(program) {
            self.pause_target = None;
            self.pauses += 1;
            true
        } else {
            false
        }
    }

    pub fn pause_pending(&self) -> bool {
        self.pause_target.is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budgets_and_radix() {
        assert_eq!(radix_for(2), 5);
        assert_eq!(radix_for(1024), 50);
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(5), 3);
        let b = TokenBudget::new(5);
        assert!((b.t_q(1, 3, 1.0) - 10.0 * 2.0 * 125.0).abs() < 1e-9);
        assert!((b.t_t(2, 0, 2.0) - 10.0 * 4.0 * 5f64.powi(9) * 1.4).abs() < 1e-3);
        assert_eq!(b.threshold_int(0), 25);
        assert_eq!(TokenBudget::new(50).threshold_int(20), u64::MAX);
    }

    #[test]
    fn nearest_violating_program_pauses() {
        let mut s = TokenScheduler::new();
        let outer = s.new_program();
        let inner = s.new_program();
        s.set_quota(outer, 10.0, 10.0);
        s.set_quota(inner, 3.0, 10.0);
        let node = s.new_node();
        s.enter_program(outer);
        s.enter_node(node);
        s.enter_program(inner);
        assert!(s.try_burn(2.0, 1.0));
        assert!(!s.try_burn(2.0, 1.0));
        assert!(!s.take_pause(outer));
        assert!(s.take_pause(inner));
        assert_eq!(s.used(outer), (2.0, 1.0));
        assert_eq!(s.node_burn(node), (2.0, 1.0));
        s.leave_program();
        assert!(!s.try_burn(9.0, 0.0));
        assert!(s.take_pause(outer));
        assert_eq!(s.pauses, 2);
    }
}
