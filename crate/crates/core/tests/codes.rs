mod common;

use num_rational::Ratio;
use scldpc::decoder::DecoderConfig;
use scldpc::gf2;
use scldpc::harness::{
    min_distance_bruteforce, report, simulate, Architecture, ChannelGrid, CodeSource,
    ExperimentSpec, Format, RunConfig, DEFAULT_DIMENSION_CAP,
};
use scldpc::lifting::{lift, LiftSpec};
use scldpc::protograph::{
    couple_and_terminate, design_rate, edge_spread, BaseMatrix, ProtographDoc, SpreadRule,
};

#[test]
fn rate_law_against_rank() {
    let base = BaseMatrix::new(&[vec![3, 3]]).unwrap();
    let random = edge_spread(&base, 2, SpreadRule::Random { seed: 1 }).unwrap();
    let uniform = edge_spread(&base, 2, SpreadRule::Uniform).unwrap();
    let mut prev = None;
    for length in 3..=20 {
        let formula = Ratio::new(1, 1) - Ratio::new((length + 2) as i64, (length * 2) as i64);
        for (spreading, deficiency) in [(&random, 0), (&uniform, 2)] {
            let t = couple_and_terminate(spreading, length).unwrap();
            assert_eq!(design_rate(&t), formula);
            let h = lift(t.rendered(), &LiftSpec::permutation(4, length as u64)).unwrap();
            let rank = gf2::rank(&h);
            // uniform [1, 1] components: each residue class of check
            // sections mod 3 sums to the all-ones row
            assert_eq!(h.m() - rank, deficiency, "L = {length}");
            if rank == h.m() {
                assert_eq!(Ratio::new((h.n() - rank) as i64, h.n() as i64), formula);
            }
        }
        if let Some(p) = prev {
            assert!(formula > p);
        }
        assert!(formula < Ratio::new(1, 2));
        prev = Some(formula);
    }
}

#[test]
fn distance_oracles_agree() {
    for (length, m, seed) in [
        (4, 3, 1),
        (4, 3, 2),
        (3, 4, 5),
        (2, 6, 7),
        (4, 2, 9),
        (3, 3, 11),
    ] {
        let code = common::sc36(length, m, seed);
        assert!(code.h.n() <= 24);
        let gray = min_distance_bruteforce(&code.h, DEFAULT_DIMENSION_CAP).unwrap();
        assert_eq!(
            Some(gray),
            common::min_distance_mitm(&code.h),
            "L={length} M={m} seed={seed}"
        );
    }
}

#[test]
fn reports_do_not_depend_on_threads() {
    let spec = |threads| ExperimentSpec {
        code: CodeSource::Protograph {
            doc: ProtographDoc {
                base: vec![vec![3, 3]],
                ms: Some(2),
                components: None,
                length: Some(8),
            },
            lift: LiftSpec::permutation(10, 3),
        },
        run: RunConfig {
            threads: Some(threads),
            target_frame_errors: 20,
            ..RunConfig::new(
                ChannelGrid::Awgn(vec![1.0, 2.5]),
                Architecture::Batch,
                DecoderConfig::default(),
                150,
                77,
            )
        },
    };
    let one = report(&simulate(&spec(1)).unwrap(), Format::Csv).unwrap();
    let three = report(&simulate(&spec(3)).unwrap(), Format::Csv).unwrap();
    assert_eq!(one, three);
    assert_eq!(
        one,
        report(&simulate(&spec(1)).unwrap(), Format::Csv).unwrap()
    );
}
