//! The recursive bounded edit-distance solver with pausable child programs.
//!
//! Each recursion node is a future. Token burns are the only suspension
//! points: a burn the running programs cannot afford returns `Pending`, and
//! the suspension propagates up to the node that runs the program chosen for
//! pausing, which regains control and moves on to its next threshold. A
//! paused program is resumed later simply by polling it again, and
//! terminated by dropping it. The top-level call runs under no quota, so the
//! outermost future always completes in a single poll.

use std::cell::RefCell;
use std::future::{poll_fn, Future};
use std::pin::Pin;
use std::rc::Rc;
use std::task::{Context, Poll, Waker};

use super::anchor::{find_anchor, is_anchor};
use super::script::{Edit, EditScript};
use super::tokens::{radix_for, TokenBudget, TokenScheduler};
use crate::error::{Error, Result};
use crate::oracle_sim::{fragments_equal, OracleText};

/// Solver knobs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    /// Radix of the threshold sequence; default `⌈5·log₂ n⌉`.
    pub rho: Option<u64>,
    /// Multiplier on every program quota (`f64::INFINITY` disables pausing).
    pub quota_scale: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            rho: None,
            quota_scale: 1.0,
        }
    }
}

/// Tokens burnt by one completed recursion node, including everything it
/// ran (also paused or terminated programs).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeRecord {
    pub x_len: usize,
    pub y_len: usize,
    pub distance: usize,
    pub q_tokens: f64,
    pub t_tokens: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TokenReport {
    pub rho: u64,
    /// Completed nodes in completion order; the last one is the root.
    pub nodes: Vec<NodeRecord>,
    pub pauses: u64,
    pub terminations: u64,
}

impl TokenReport {
    pub fn budget(&self) -> TokenBudget {
        TokenBudget::new(self.rho)
    }

    /// Nodes burning more than `T_q` or `T_t` at their own distance.
    pub fn violations(&self) -> Vec<NodeRecord> {
        let b = self.budget();
        self.nodes
            .iter()
            .filter(|r| {
                r.distance >= 1
                    && (r.q_tokens > b.t_q(r.x_len, r.y_len, r.distance as f64) * (1.0 + 1e-12)
                        || r.t_tokens > b.t_t(r.x_len, r.y_len, r.distance as f64) * (1.0 + 1e-12))
            })
            .copied()
            .collect()
    }

    pub fn root(&self) -> Option<&NodeRecord> {
        self.nodes.last()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub distance: usize,
    pub script: EditScript,
    pub tokens: TokenReport,
}

#[derive(Debug, Clone, Default)]
struct Outcome {
    d: usize,
    script: EditScript,
}

type NodeFuture = Pin<Box<dyn Future<Output = Outcome>>>;

struct Shared {
    sched: TokenScheduler,
    budget: TokenBudget,
    quota_scale: f64,
    n: usize,
    nodes: Vec<NodeRecord>,
}

type Env = Rc<RefCell<Shared>>;

/// Keeps the node on the scheduler's node stack while it is being polled,
/// so burns inside it are credited to it.
struct Tracked {
    env: Env,
    node: usize,
    inner: NodeFuture,
}

impl Future for Tracked {
    type Output = Outcome;
    fn poll(mut self: Pin<&mut Self>, cx: &mut Context<'_>) -> Poll<Outcome> {
        let node = self.node;
        self.env.borrow_mut().sched.enter_node(node);
        let r = self.inner.as_mut().poll(cx);
        self.env.borrow_mut().sched.leave_node();
        r
    }
}

async fn burn(env: &Env, q: f64, t: f64) {
    poll_fn(|_| {
        if env.borrow_mut().sched.try_burn(q, t) {
            Poll::Ready(())
        } else {
            Poll::Pending
        }
    })
    .await
}

struct Frame {
    x: OracleText,
    y: OracleText,
    x_off: usize,
    y_off: usize,
}

fn spawn_node(env: &Env, f: Frame) -> NodeFuture {
    let node = env.borrow_mut().sched.new_node();
    let inner = Box::pin(node_body(env.clone(), f, node));
    Box::pin(Tracked {
        env: env.clone(),
        node,
        inner,
    })
}

enum Program {
    Idle,
    Running { id: usize, fut: NodeFuture },
    Finished(Outcome),
}

fn single_symbol(x: &OracleText, y: &OracleText, x_off: usize, y_off: usize) -> Outcome {
    let c = x.read(1).expect("non-empty");
    let ny = y.len();
    let inserts = |skip: usize| {
        (1..=ny)
            .filter(move |&j| j != skip)
            .map(move |j| Edit::Insert {
                y: y_off + j,
                sym: y.read(j).expect("in range"),
            })
    };
    if let Some(j) = (1..=ny).find(|&j| y.read(j).expect("in range") == c) {
        return Outcome {
            d: ny - 1,
            script: EditScript::new(inserts(j).collect()),
        };
    }
    let script = if ny == 0 {
        EditScript::new(vec![Edit::Delete { x: x_off + 1 }])
    } else {
        let first = Edit::Substitute {
            x: x_off + 1,
            sym: y.read(1).expect("in range"),
        };
        EditScript::new(std::iter::once(first).chain(inserts(1)).collect())
    };
    Outcome {
        d: ny.max(1),
        script,
    }
}

async fn node_body(env: Env, f: Frame, node: usize) -> Outcome {
    let (nx, ny) = (f.x.len(), f.y.len());
    let (budget, n, scale) = {
        let s = env.borrow();
        (s.budget, s.n, s.quota_scale)
    };
    let finish = |out: Outcome| {
        let mut s = env.borrow_mut();
        let (q, t) = s.sched.node_burn(node);
        s.nodes.push(NodeRecord {
            x_len: nx,
            y_len: ny,
            distance: out.d,
            q_tokens: q,
            t_tokens: t,
        });
        out
    };
    if nx == 1 {
        burn(&env, (ny + 1) as f64, (ny + 1) as f64).await;
        return finish(single_symbol(&f.x, &f.y, f.x_off, f.y_off));
    }
    let mut anchor: Option<(usize, usize)> = None;
    let mut program = Program::Idle;
    for i in 0u32.. {
        let th = budget.threshold(i);
        let k = budget.threshold_int(i);
        burn(&env, (th * (nx + ny) as f64).sqrt(), th * th).await;
        let keep = anchor.is_some_and(|a| is_anchor(&f.x, &f.y, k, a, n));
        if !keep {
            let ax = nx.div_ceil(2);
            let ay = find_anchor(&f.x, &f.y, k, ax, n);
            anchor = Some((ax, ay));
            let (xl, yl) = (
                f.x.fragment(0, ax).expect("in range"),
                f.y.fragment(0, ay).expect("in range"),
            );
            let (xr, yr) = (
                f.x.fragment(ax, nx).expect("in range"),
                f.y.fragment(ay, ny).expect("in range"),
            );
            let left = (!fragments_equal(&xl, &yl)).then(|| Frame {
                x: xl,
                y: yl,
                x_off: f.x_off,
                y_off: f.y_off,
            });
            let right = (!fragments_equal(&xr, &yr)).then(|| Frame {
                x: xr,
                y: yr,
                x_off: f.x_off + ax,
                y_off: f.y_off + ay,
            });
            let mut s = env.borrow_mut();
            if matches!(program, Program::Running { .. }) {
                s.sched.terminations += 1;
            }
            let id = s.sched.new_program();
            drop(s);
            program = Program::Running {
                id,
                fut: Box::pin(program_body(env.clone(), left, right)),
            };
        }
        if let Program::Running { id, fut } = &mut program {
            let id = *id;
            // quota for this iteration: the budgets at distance ρ^{2i}
            let d_quota = if i == 0 { 1.0 } else { budget.threshold(i - 1) };
            env.borrow_mut().sched.set_quota(
                id,
                scale * budget.t_q(nx, ny, d_quota),
                scale * budget.t_t(nx, ny, d_quota),
            );
            let step = poll_fn(|cx| {
                env.borrow_mut().sched.enter_program(id);
                let r = fut.as_mut().poll(cx);
                env.borrow_mut().sched.leave_program();
                match r {
                    Poll::Ready(out) => Poll::Ready(Some(out)),
                    Poll::Pending if env.borrow_mut().sched.take_pause(id) => Poll::Ready(None),
                    Poll::Pending => Poll::Pending,
                }
            })
            .await;
            if let Some(out) = step {
                program = Program::Finished(out);
            }
        }
        if let Program::Finished(out) = &mut program {
            if (out.d as f64) < th {
                return finish(std::mem::take(out));
            }
        }
    }
    unreachable!("the threshold loop only exits by returning")
}

async fn program_body(env: Env, left: Option<Frame>, right: Option<Frame>) -> Outcome {
    let mut total = Outcome::default();
    for frame in [left, right].into_iter().flatten() {
        let out = spawn_node(&env, frame).await;
        total.d += out.d;
        total.script.append(out.script);
    }
    total
}

/// Exact edit distance of the two oracle texts with an optimal edit script.
pub fn solve(ox: &OracleText, oy: &OracleText, cfg: &SolveConfig) -> Result<Solution> {
    let n = ox.len().max(oy.len()).max(2);
    let rho = cfg.rho.unwrap_or_else(|| radix_for(n));
    let mut tokens = TokenReport {
        rho,
        ..TokenReport::default()
    };
    if ox.is_empty() {
        let edits = (1..=oy.len())
            .map(|j| Edit::Insert {
                y: j,
                sym: oy.read(j).expect("in range"),
            })
            .collect();
        return Ok(Solution {
            distance: oy.len(),
            script: EditScript::new(edits),
            tokens,
        });
    }
    if fragments_equal(ox, oy) {
        return Ok(Solution {
            distance: 0,
            script: EditScript::default(),
            tokens,
        });
    }
    let env: Env = Rc::new(RefCell::new(Shared {
        sched: TokenScheduler::new(),
        budget: TokenBudget::new(rho),
        quota_scale: cfg.quota_scale,
        n,
        nodes: Vec::new(),
    }));
    let mut root = spawn_node(
        &env,
        Frame {
            x: ox.clone(),
            y: oy.clone(),
            x_off: 0,
            y_off: 0,
        },
    );
    let mut cx = Context::from_waker(Waker::noop());
    let out = match root.as_mut().poll(&mut cx) {
        Poll::Ready(out) => out,
        Poll::Pending => return Err(Error::Invariant("top-level solve was paused".into())),
    };
    drop(root);
    let shared = Rc::try_unwrap(env)
        .map_err(|_| Error::Invariant("solver state still shared".into()))?
        .into_inner();
    tokens.nodes = shared.nodes;
    tokens.pauses = shared.sched.pauses;
    tokens.terminations = shared.sched.terminations;
    Ok(Solution {
        distance: out.d,
        script: out.script,
        tokens,
    })
}
