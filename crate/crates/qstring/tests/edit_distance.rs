use proptest::prelude::*;
use qstring::corpus::{self, all_strings_up_to};
use qstring::edit_distance::{
    bounded_edit_distance, compressible_window, find_anchor, is_anchor, lz_edit_distance, solve,
    EditScript, SolveConfig, WindowBounds,
};
use qstring::lz_core::{lz77_greedy, lz_end_classical};
use qstring::{reference, Ledger, OracleText, Sym};

fn oracle(t: &[Sym]) -> OracleText {
    OracleText::new(t.to_vec(), Ledger::new(1))
}

fn syms(s: &str) -> Vec<Sym> {
    s.bytes().map(Sym::from).collect()
}

fn check_solution(x: &[Sym], y: &[Sym], cfg: &SolveConfig) -> usize {
    let sol = solve(&oracle(x), &oracle(y), cfg).unwrap();
    let want = reference::edit_distance(x, y);
    assert_eq!(sol.distance, want, "{x:?} -> {y:?}");
    assert_eq!(sol.script.cost(), want, "{x:?} -> {y:?}");
    assert!(
        sol.script.transforms(x, y),
        "{x:?} -> {y:?}: {}",
        sol.script
    );
    assert!(
        sol.tokens.violations().is_empty(),
        "{:?}",
        sol.tokens.violations()
    );
    sol.distance
}

#[test]
fn small_examples() {
    let cfg = SolveConfig::default();
    assert_eq!(check_solution(&syms("abc"), &syms("abc"), &cfg), 0);
    assert_eq!(check_solution(&syms("kitten"), &syms("sitting"), &cfg), 3);
    assert_eq!(check_solution(&[], &syms("abc"), &cfg), 3);
    assert_eq!(check_solution(&syms("abc"), &[], &cfg), 3);
    let sol = solve(&oracle(&syms("kitten")), &oracle(&syms("sitting")), &cfg).unwrap();
    assert_eq!(
        EditScript::parse(&sol.script.to_text()).unwrap(),
        sol.script
    );
}

#[test]
fn exhaustive_ternary_short_pairs() {
    let strings: Vec<Vec<Sym>> = all_strings_up_to(4, 3).collect();
    let cfg = SolveConfig::default();
    for x in &strings {
        for y in &strings {
            check_solution(x, y, &cfg);
        }
    }
}

#[test]
fn planted_random_pairs() {
    let mut rng = corpus::rng(11);
    let cfg = SolveConfig::default();
    for round in 0..60 {
        let n = 20 + round * 5;
        let x = corpus::random_text(&mut rng, n, 3);
        let k = round % 17;
        let y = corpus::planted_edits(&mut rng, &x, k, &[0, 1, 2]);
        check_solution(&x, &y, &cfg);
    }
}

#[test]
fn pauses_do_not_change_the_answer() {
    let mut rng = corpus::rng(5);
    let mut paused_runs = 0;
    for round in 0..40 {
        let x = corpus::random_text(&mut rng, 8 + round, 2);
        let y = corpus::planted_edits(&mut rng, &x, 1 + round % 6, &[0, 1]);
        let free = solve(
            &oracle(&x),
            &oracle(&y),
            &SolveConfig {
                rho: Some(2),
                quota_scale: f64::INFINITY,
            },
        )
        .unwrap();
        let tight = solve(
            &oracle(&x),
            &oracle(&y),
            &SolveConfig {
                rho: Some(2),
                quota_scale: 1e-4,
            },
        )
        .unwrap();
        assert_eq!(free.tokens.pauses, 0);
        paused_runs += usize::from(tight.tokens.pauses > 0);
        assert_eq!(free.distance, tight.distance);
        assert_eq!(free.distance, reference::edit_distance(&x, &y));
        assert!(tight.script.transforms(&x, &y));
    }
    assert!(paused_runs > 0, "tight quotas should force pauses");
}

#[test]
fn find_anchor_lands_on_an_optimal_alignment() {
    let mut rng = corpus::rng(21);
    for round in 0..200 {
        let n = 1 + round % 60;
        let x = corpus::random_text(&mut rng, n, 2 + (round % 3) as u32);
        let y = corpus::planted_edits(&mut rng, &x, round % 7, &[0, 1, 2]);
        let d = reference::edit_distance(&x, &y) as u64;
        let (fwd, bwd) = reference::anchor_tables(&x, &y);
        for k in [d.max(1), d + 3] {
            for xs in [0, n / 3, n.div_ceil(2), n] {
                let ys = find_anchor(&oracle(&x), &oracle(&y), k, xs, n.max(y.len()));
                assert!(ys <= y.len());
                assert_eq!(
                    fwd[xs][ys] + bwd[xs][ys],
                    d as usize,
                    "{x:?} {y:?} k={k} x={xs} y={ys}"
                );
            }
        }
        if d >= 2 {
            // below the true distance anything in range is acceptable
            let ys = find_anchor(&oracle(&x), &oracle(&y), d - 1, n / 2, n.max(y.len()));
            assert!(ys <= y.len());
        }
    }
}

#[test]
fn is_anchor_agrees_with_dp() {
    let mut rng = corpus::rng(31);
    for round in 0..80 {
        let n = 1 + round % 32;
        let x = corpus::random_text(&mut rng, n, 2);
        let y = corpus::planted_edits(&mut rng, &x, round % 5, &[0, 1]);
        let d = reference::edit_distance(&x, &y) as u64;
        let k = d.max(1) + (round as u64 % 3);
        let (fwd, bwd) = reference::anchor_tables(&x, &y);
        let nn = n.max(y.len());
        assert!(is_anchor(&oracle(&x), &oracle(&y), k, (0, 0), nn));
        assert!(is_anchor(&oracle(&x), &oracle(&y), k, (n, y.len()), nn));
        // anchors lie within distance d of the diagonal; probe a band around it
        for xs in 0..=n {
            let lo = xs.saturating_sub(d as usize + 2);
            for ys in lo..=(xs + d as usize + 2).min(y.len()) {
                let truth = fwd[xs][ys] + bwd[xs][ys] == d as usize;
                assert_eq!(
                    is_anchor(&oracle(&x), &oracle(&y), k, (xs, ys), nn),
                    truth,
                    "{x:?} {y:?} ({xs},{ys}) k={k}"
                );
            }
        }
    }
}

fn brute_window(x: &[Sym], split: usize, bound: usize) -> (usize, usize) {
    let z = |t: &[Sym]| reference::lz77(t).len();
    let i = (0..=split)
        .find(|&i| {
            let rev: Vec<Sym> = x[i..split].iter().rev().copied().collect();
            z(&rev) <= bound
        })
        .unwrap();
    let j = (split..=x.len())
        .rev()
        .find(|&j| z(&x[split..j]) <= bound)
        .unwrap();
    (i, j)
}

#[test]
fn compressible_window_matches_brute_force() {
    let mut rng = corpus::rng(41);
    for round in 0..150 {
        let n = 1 + round % 100;
        let x = if round % 4 == 0 {
            corpus::planted_z(&mut rng, n, 3, &[0, 1, 2, 3])
        } else {
            corpus::random_text(&mut rng, n, 2 + (round % 3) as u32)
        };
        for k in [0u64, 1, 2] {
            let wb = WindowBounds::new(k, n);
            for split in [0, n / 4, n / 2, n] {
                let got = compressible_window(&oracle(&x), split, &wb);
                assert_eq!(
                    got,
                    brute_window(&x, split, wb.lz_bound),
                    "{x:?} split={split} k={k}"
                );
            }
        }
    }
    let unary = vec![1 as Sym; 100];
    assert_eq!(
        compressible_window(&oracle(&unary), 37, &WindowBounds::new(0, 100)),
        (0, 100)
    );
    let t = corpus::random_text(&mut rng, 100, 4);
    assert_eq!(
        compressible_window(&oracle(&t), 50, &WindowBounds::new(100, 100)),
        (0, 100)
    );
}

#[test]
fn compressed_distance_accepts_any_factorization_kind() {
    let (x, y) = (syms("kitten"), syms("sitting"));
    let r = lz_edit_distance(&lz_end_classical(&x), &lz77_greedy(&y), None)
        .unwrap()
        .unwrap();
    assert_eq!(r.0, 3);
    assert!(
        lz_edit_distance(&lz77_greedy(&x), &lz77_greedy(&y), Some(1))
            .unwrap()
            .is_none()
    );
    let f = lz77_greedy(&x);
    assert_eq!(
        lz_edit_distance(&f, &f, None).unwrap().unwrap(),
        (0, EditScript::default())
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn landau_vishkin_matches_dp(x in proptest::collection::vec(0u32..3, 0..40), y in proptest::collection::vec(0u32..3, 0..40)) {
        let (d, script) = bounded_edit_distance(&x, &y, None).unwrap();
        prop_assert_eq!(d, reference::edit_distance(&x, &y));
        prop_assert_eq!(script.cost(), d);
        prop_assert!(script.transforms(&x, &y));
        prop_assert!(bounded_edit_distance(&x, &y, Some(d.saturating_sub(1))).is_none() || d == 0);
    }

    #[test]
    fn solve_matches_dp(x in proptest::collection::vec(0u32..4, 1..50), k in 0usize..8, seed in any::<u64>()) {
        let y = corpus::planted_edits(&mut corpus::rng(seed), &x, k, &[0, 1, 2, 3]);
        check_solution(&x, &y, &SolveConfig::default());
    }
}

/// A monotone lattice path from `(i, 0)` to `(j, |y|)`.
type Alignment = Vec<(usize, usize)>;

/// Optimal alignments of `x(i..j]` onto `y`, sampled by random tie-breaking
/// in the DP traceback, with their cost.
fn sample_alignments(
    x: &[Sym],
    y: &[Sym],
    i: usize,
    j: usize,
    rng: &mut corpus::CorpusRng,
    count: usize,
) -> (usize, Vec<Alignment>) {
    use rand::seq::SliceRandom;
    let table = reference::edit_distance_table(&x[i..j], y);
    let (a, b) = (j - i, y.len());
    let mut paths = Vec::new();
    for _ in 0..count {
        let (mut p, mut q) = (a, b);
        let mut path = vec![(i + p, q)];
        while p > 0 || q > 0 {
            let mut moves = Vec::new();
            if p > 0
                && q > 0
                && table[p - 1][q - 1] + usize::from(x[i + p - 1] != y[q - 1]) == table[p][q]
            {
                moves.push((p - 1, q - 1));
            }
            if p > 0 && table[p - 1][q] + 1 == table[p][q] {
                moves.push((p - 1, q));
            }
            if q > 0 && table[p][q - 1] + 1 == table[p][q] {
                moves.push((p, q - 1));
            }
            (p, q) = *moves.choose(rng).unwrap();
            path.push((i + p, q));
        }
        path.reverse();
        paths.push(path);
    }
    paths.sort();
    paths.dedup();
    (table[a][b], paths)
}

#[test]
fn disjoint_alignments_imply_compression() {
    use rand::Rng;
    let mut rng = corpus::rng(51);
    let mut disjoint_pairs = 0usize;
    for _ in 0..150 {
        let m = rng.gen_range(1..=6);
        let y = corpus::random_text(&mut rng, m, 2);
        // x: several noisy copies of y, so many fragments align cheaply
        let mut x = Vec::new();
        while x.len() < 20 {
            let k = rng.gen_range(0..=1);
            x.extend(corpus::planted_edits(&mut rng, &y, k, &[0, 1]));
        }
        let keep = rng.gen_range(m..=20);
        x.truncate(keep);
        let n = x.len();
        let mut lz = vec![vec![0usize; n + 1]; n + 1];
        for a in 0..=n {
            for b in a..=n {
                lz[a][b] = reference::lz77(&x[a..b]).len();
            }
        }
        let mut cands: Vec<(usize, usize, usize, Alignment)> = Vec::new();
        for i in 0..=n {
            for j in i..=n {
                let (cost, paths) = sample_alignments(&x, &y, i, j, &mut rng, 4);
                if cost <= 2 {
                    cands.extend(paths.into_iter().map(|p| (i, j, cost, p)));
                }
            }
        }
        for (u, (i, j, c, pa)) in cands.iter().enumerate() {
            let set: std::collections::HashSet<_> = pa.iter().collect();
            for (i2, j2, c2, pb) in &cands[u + 1..] {
                if pb.iter().any(|pt| set.contains(pt)) {
                    continue;
                }
                disjoint_pairs += 1;
                let bound = i.abs_diff(*i2) + 2 * c + 2 * c2 + 1;
                let (lo, hi) = ((*i).min(*i2), (*j).max(*j2));
                for a in lo..=hi {
                    for b in a..=hi {
                        assert!(
                            lz[a][b] <= bound,
                            "{x:?} {y:?} fragments ({i},{j}) ({i2},{j2}) window ({a},{b})"
                        );
                    }
                }
            }
        }
    }
    assert!(
        disjoint_pairs > 1000,
        "only {disjoint_pairs} disjoint pairs exercised"
    );
}
