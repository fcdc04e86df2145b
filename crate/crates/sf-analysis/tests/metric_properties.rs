use proptest::prelude::*;
use sf_analysis::{chi_square_uniform, entropy, hamming_distance, histogram, Histogram256};
use sf_core::Block;
use sf_imagio::GrayImage;

proptest! {
    /// Hamming distance is a metric on equal-width blocks.
    #[test]
    fn hamming_is_a_metric(
        a in proptest::collection::vec(any::<u8>(), 16),
        b in proptest::collection::vec(any::<u8>(), 16),
        c in proptest::collection::vec(any::<u8>(), 16),
    ) {
        let (ba, bb, bc) = (
            Block::from_bytes(a.clone()),
            Block::from_bytes(b.clone()),
            Block::from_bytes(c),
        );
        let dab = hamming_distance(&ba, &bb).unwrap();
        let dba = hamming_distance(&bb, &ba).unwrap();
        prop_assert_eq!(dab, dba);
        prop_assert_eq!(dab == 0, a == b);
        let dac = hamming_distance(&ba, &bc).unwrap();
        let dbc = hamming_distance(&bb, &bc).unwrap();
        prop_assert!(dac <= dab + dbc, "triangle inequality violated");
    }

    /// Shuffling pixel positions never changes the histogram or entropy.
    #[test]
    fn entropy_invariant_under_pixel_permutation(
        pixels in proptest::collection::vec(any::<u8>(), 1..512),
        seed in any::<u64>(),
    ) {
        let original = Histogram256::from_intensities(&pixels);
        let mut shuffled = pixels.clone();
        // Fisher-Yates with a tiny inline xorshift.
        let mut state = seed | 1;
        for i in (1..shuffled.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let j = (state % (i as u64 + 1)) as usize;
            shuffled.swap(i, j);
        }
        let after = Histogram256::from_intensities(&shuffled);
        prop_assert_eq!(&original, &after);
        prop_assert_eq!(entropy(&original).unwrap(), entropy(&after).unwrap());
    }

    /// Entropy of any 8-bit histogram lies in [0, 8], hitting 8 only when
    /// exactly uniform.
    #[test]
    fn entropy_bounds(pixels in proptest::collection::vec(any::<u8>(), 1..2048)) {
        let hist = Histogram256::from_intensities(&pixels);
        let e = entropy(&hist).unwrap();
        prop_assert!((0.0..=8.0).contains(&e));
        let uniform = hist.counts().iter().all(|&c| c == hist.counts()[0]);
        if e == 8.0 {
            prop_assert!(uniform);
        }
        if uniform && hist.counts()[0] > 0 {
            prop_assert_eq!(e, 8.0);
        }
    }

    /// The report mean agrees with an independent summation to 1e-12.
    #[test]
    fn mean_matches_independent_summation(
        ratios in proptest::collection::vec(0.0f64..=1.0, 1..200)
    ) {
        let mean = sf_analysis::mean_ratio(&ratios).unwrap();
        let mut acc = 0.0f64;
        for &r in ratios.iter().rev() {
            acc += r;
        }
        let independent = acc / ratios.len() as f64;
        prop_assert!((mean - independent).abs() <= 1e-12);
    }
}

#[test]
fn chi_square_orders_flat_below_peaked() {
    let flat: Vec<u8> = (0..2560).map(|i| (i % 256) as u8).collect();
    let peaked = vec![7u8; 2560];
    let flat_chi = chi_square_uniform(&Histogram256::from_intensities(&flat)).unwrap();
    let peaked_chi = chi_square_uniform(&Histogram256::from_intensities(&peaked)).unwrap();
    assert_eq!(flat_chi, 0.0);
    assert!(peaked_chi > flat_chi);
}

#[test]
fn histogram_wrapper_matches_raw_counts() {
    let img = GrayImage::new(4, 4, (0..16).map(|i| i * 3).collect()).unwrap();
    let a = histogram(&img);
    let b = Histogram256::from_intensities(img.pixels());
    assert_eq!(a, b);
}
