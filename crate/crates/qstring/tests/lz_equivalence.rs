use proptest::prelude::*;
use qstring::lz_core::{
    convert_to_lz77, lz77_greedy, lz_end_classical, non_overlapping_lz77_oracle,
    substring_complexity, Factorization, FactorizationKind,
};
use qstring::lz_end_tau::{
    build, build_with_tau, lz_end_tau_classical, BuildConfig, Strategy as Search,
};
use qstring::{reference, Ledger, OracleText, Sym};

fn binary_strings(n: usize) -> impl Iterator<Item = Vec<Sym>> {
    (0u32..(1 << n)).map(move |m| (0..n).map(|i| (m >> i) & 1).collect())
}

fn oracle(t: &[Sym]) -> OracleText {
    OracleText::new(t.to_vec(), Ledger::new(1))
}

#[test]
fn exhaustive_binary_all_parsers() {
    for n in 0..=9 {
        for t in binary_strings(n) {
            assert_eq!(lz77_greedy(&t).phrases, reference::lz77(&t), "lz77 {t:?}");
            assert_eq!(
                lz_end_classical(&t).phrases,
                reference::lz_end(&t),
                "lzend {t:?}"
            );
            assert_eq!(
                non_overlapping_lz77_oracle(&oracle(&t)).phrases,
                reference::non_overlapping_lz77(&t),
                "nolz77 {t:?}"
            );
            for tau in 1..=4 {
                let want = reference::lz_end_tau(&t, tau);
                assert_eq!(
                    lz_end_tau_classical(&t, tau).phrases,
                    want,
                    "classical tau={tau} {t:?}"
                );
                for st in [Search::Linear, Search::PerWindow, Search::Merged] {
                    let got = build_with_tau(&oracle(&t), tau, st, None).unwrap();
                    assert_eq!(got.phrases, want, "{st:?} tau={tau} {t:?}");
                }
            }
        }
    }
}

#[test]
fn minimality_of_lz77_over_all_parses() {
    // z of greedy LZ77 equals the fewest phrases of any valid LZ77-style parse
    for n in 1..=10 {
        for t in binary_strings(n) {
            let mut best = vec![usize::MAX; n + 1];
            best[0] = 0;
            for i in 0..n {
                if best[i] == usize::MAX {
                    continue;
                }
                // literal only if fresh; otherwise any earlier-starting copy
                let fresh = !t[..i].contains(&t[i]);
                if fresh {
                    best[i + 1] = best[i + 1].min(best[i] + 1);
                }
                for l in 1..=n - i {
                    let ok = (0..i).any(|src| (0..l).all(|k| t[src + k] == t[i + k]));
                    if ok {
                        best[i + l] = best[i + l].min(best[i] + 1);
                    }
                }
            }
            assert_eq!(lz77_greedy(&t).len(), best[n], "{t:?}");
        }
    }
}

#[test]
fn conversion_and_doubling_agree() {
    let texts: Vec<Vec<Sym>> = vec![
        b"abacabcabcaaaab".iter().map(|&b| b as Sym).collect(),
        b"00010011011".iter().map(|&b| b as Sym).collect(),
        (0..200).map(|i| ((i * i + 3 * i) % 7) as Sym).collect(),
    ];
    for t in texts {
        let o = oracle(&t);
        let r = build(&o, &BuildConfig::default());
        let f = r.factorization.unwrap();
        let tau = match f.kind {
            FactorizationKind::LzEndTau(tau) => tau,
            _ => unreachable!(),
        };
        assert_eq!(f.phrases, reference::lz_end_tau(&t, tau));
        let ledger_before = o.ledger().total();
        let z = convert_to_lz77(&f).unwrap();
        assert_eq!(
            o.ledger().total(),
            ledger_before,
            "conversion must not query"
        );
        assert_eq!(z, lz77_greedy(&t));
    }
}

#[test]
fn lz_size_under_reversal_concatenation_and_edits() {
    let mut rng = qstring::corpus::rng(23);
    let (mut c_rev, mut c_cat, mut c_edit): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for round in 0..40 {
        let n = 16 << (round % 10);
        let x = if round % 2 == 0 {
            qstring::corpus::planted_z(&mut rng, n, 1 + round % 13, &qstring::corpus::DNA)
        } else {
            qstring::corpus::random_text(&mut rng, n, 2 + (round % 3) as u32)
        };
        let y =
            qstring::corpus::planted_z(&mut rng, n / 2 + 1, 1 + round % 7, &qstring::corpus::DNA);
        let k = round % 9;
        let edited = qstring::corpus::planted_edits(&mut rng, &x, k, &qstring::corpus::DNA);
        let z = |t: &[Sym]| lz77_greedy(t).len() as f64;
        let log = (n.max(2) as f64).log2();
        let rev: Vec<Sym> = x.iter().rev().copied().collect();
        let xy: Vec<Sym> = x.iter().chain(&y).copied().collect();
        c_rev = c_rev.max(z(&rev) / (z(&x) * log));
        c_cat = c_cat.max(z(&xy) / ((z(&x) + z(&y)) * log));
        c_edit = c_edit.max(z(&edited) / ((z(&x) + k as f64) * log));
    }
    println!("fitted constants: reverse {c_rev:.4}, concatenation {c_cat:.4}, edits {c_edit:.4}");
    assert!(c_rev <= 8.0 && c_cat <= 8.0 && c_edit <= 8.0);
}

fn small_text() -> impl Strategy<Value = Vec<Sym>> {
    (1u32..=4).prop_flat_map(|sigma| proptest::collection::vec(0..sigma, 0..80))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tau_parse_matches_reference(t in small_text(), tau in 1usize..=6) {
        let f = build_with_tau(&oracle(&t), tau, Search::Merged, None).unwrap();
        prop_assert_eq!(&f.phrases, &reference::lz_end_tau(&t, tau));
        f.check_kind().unwrap();
    }

    #[test]
    fn sizes_relate(t in small_text()) {
        let z = lz77_greedy(&t).len();
        let n = t.len().max(2) as f64;
        let bound = 8.0 * z as f64 * n.log2() * n.log2();
        for tau in 1..=4 {
            let ze = lz_end_tau_classical(&t, tau).len();
            prop_assert!(z <= ze);
            prop_assert!((ze as f64) <= bound.max(1.0));
        }
        prop_assert!(substring_complexity(&t).at_most(z));
        prop_assert!((substring_complexity(&t).value() - reference::substring_complexity(&t)).abs() < 1e-12);
    }

    #[test]
    fn jsonl_round_trips(t in small_text(), tau in 1usize..=4) {
        for f in [lz77_greedy(&t), lz_end_classical(&t), lz_end_tau_classical(&t, tau)] {
            let s = f.to_jsonl();
            let g = Factorization::read_jsonl(s.as_bytes()).unwrap();
            prop_assert_eq!(&g, &f);
            prop_assert_eq!(g.to_jsonl(), s);
            prop_assert_eq!(g.decompress().unwrap(), t.clone());
        }
    }
}
