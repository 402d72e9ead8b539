use fpcap::channel_spec::{format_channel, ChannelSpec};
use fpcap::fpcap_core::channels::{CollusionChannel, GapKind};
use fpcap::fpcap_core::optimize::{DecoderKind, OptimizerOptions};
use fpcap::report::{read_grid_csv, write_grid_csv};
use fpcap::scan::{threshold_grid, GridCell, GridScan};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 500,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Any bit pattern in `[0, 1]`, with the ends and tiny values well represented.
fn probability() -> impl Strategy<Value = f64> {
    prop_oneof![
        Just(0.0),
        Just(1.0),
        0.0..=1.0f64,
        (0u64..=1u64 << 52).prop_map(|m| f64::from_bits(m)),
        (-300i32..0).prop_map(|e| 10f64.powi(e)),
    ]
}

fn spec() -> impl Strategy<Value = ChannelSpec> {
    let gap = prop_oneof![Just(GapKind::Coin), Just(GapKind::Interleaving)];
    prop_oneof![
        Just(ChannelSpec::Interleaving),
        Just(ChannelSpec::All1),
        Just(ChannelSpec::Majority),
        Just(ChannelSpec::Minority),
        Just(ChannelSpec::Coinflip),
        probability().prop_map(|r| ChannelSpec::Additive { r }),
        probability().prop_map(|r| ChannelSpec::Dilution { r }),
        (0usize..100_000).prop_map(|u| ChannelSpec::Threshold { u }),
        (0usize..1000, 0usize..1000, gap).prop_map(|(l, u, gap)| ChannelSpec::ThresholdGap { l, u, gap }),
        prop::collection::vec(probability(), 1..40).prop_map(ChannelSpec::Custom),
    ]
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn spec_text_round_trips(s in spec()) {
        let back: ChannelSpec = s.to_string().parse().unwrap();
        prop_assert_eq!(&back, &s);
        if let (ChannelSpec::Custom(a), ChannelSpec::Custom(b)) = (&back, &s) {
            prop_assert!(a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits()));
        }
    }

    #[test]
    fn channel_text_round_trips(theta in prop::collection::vec(probability(), 2..30)) {
        let channel = CollusionChannel::new(theta).unwrap();
        let spec: ChannelSpec = format_channel(&channel).parse().unwrap();
        let back = spec.build(0).unwrap();
        prop_assert_eq!(back.theta().len(), channel.theta().len());
        for (x, y) in back.theta().iter().zip(channel.theta()) {
            prop_assert_eq!(x.to_bits(), y.to_bits());
        }
    }

    #[test]
    fn grid_csv_round_trips(values in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 1..60)) {
        let cells: Vec<GridCell> = values
            .iter()
            .enumerate()
            .map(|(i, &v)| GridCell { l: i, u: i + 1, scaled_capacity: v })
            .collect();
        let grid = GridScan {
            c: values.len(),
            decoder: DecoderKind::Simple,
            gap: GapKind::Coin,
            options: OptimizerOptions::default(),
            cells,
        };
        let mut buf = Vec::new();
        write_grid_csv(&grid, &mut buf).unwrap();
        let back = read_grid_csv(&buf[..]).unwrap();
        prop_assert_eq!(back.len(), grid.cells.len());
        for (a, b) in back.iter().zip(&grid.cells) {
            prop_assert_eq!((a.l, a.u), (b.l, b.u));
            prop_assert_eq!(a.scaled_capacity.to_bits(), b.scaled_capacity.to_bits());
        }
    }
}

#[test]
fn computed_grid_round_trips() {
    let grid = threshold_grid(9, GapKind::Interleaving, DecoderKind::Simple, &OptimizerOptions::default()).unwrap();
    let mut buf = Vec::new();
    write_grid_csv(&grid, &mut buf).unwrap();
    let back = read_grid_csv(&buf[..]).unwrap();
    assert_eq!(back, grid.cells);
}
