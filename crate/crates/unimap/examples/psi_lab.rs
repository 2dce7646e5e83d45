// Scratch: pin the direct product form of the genus-refined counts.
use unimap::constellation::{count_by_lengths, refined_count};
use unimap::counting::{cperm_count_by_cycles, pow2, Int, Rat};

fn planar_by_lengths(l1: usize, l2: usize, l3: usize, m: usize) -> Int {
    if l1 + l2 + l3 != 2 * m + 1 {
        return Int::from(0);
    }
    count_by_lengths(l1, l2, l3, m)
}

// signed-C-permutation base: planar constellations of size m with color
// classes carrying C-permutations with the prescribed cycle counts
fn base_signed(l1: usize, l2: usize, l3: usize, m: usize) -> Int {
    let mut total = Int::from(0);
    for m1 in l1..=2 * m + 1 {
        for m2 in l2..=2 * m + 1 {
            if m1 + m2 + l3 > 2 * m + 1 {
                continue;
            }
            let m3 = 2 * m + 1 - m1 - m2;
            if m3 < l3 {
                continue;
            }
            let p = planar_by_lengths(m1, m2, m3, m);
            if p == Int::from(0) {
                continue;
            }
            total += p
                * cperm_count_by_cycles(m1, l1)
                * cperm_count_by_cycles(m2, l2)
                * cperm_count_by_cycles(m3, l3);
        }
    }
    total
}

fn main() {
    // verify refinement sums and print implied d-numbers
    for n in 1..=4usize {
        for l1 in 1..=n {
            for l2 in 1..=n {
                for l3 in 1..=n {
                    let two_g = 2 * n as isize + 1 - (l1 + l2 + l3) as isize;
                    if two_g < 0 || two_g % 2 != 0 {
                        continue;
                    }
                    let total: Int = (0..=n).map(|g0| refined_count(l1, l2, l3, n, g0)).sum();
                    let direct = count_by_lengths(l1, l2, l3, n);
                    if total != direct {
                        println!("SUM-FAIL n={n} ({l1},{l2},{l3}): {total} vs {direct}");
                        continue;
                    }
                    for g0 in 0..n {
                        let c = refined_count(l1, l2, l3, n, g0);
                        if c == Int::from(0) {
                            continue;
                        }
                        // implied d: c * 2^(2g0) (n-g0) / n
                        let implied =
                            Rat::new(c.clone() * pow2(2 * g0) * Int::from(n - g0), Int::from(n));
                        let b = base_signed(l1, l2, l3, n - g0);
                        println!(
                            "n={n} l=({l1},{l2},{l3}) g0={g0}: c={c} implied-d={implied} base-signed={b} ratio={}",
                            if b == Int::from(0) { "inf".to_string() } else { format!("{}", implied.clone() / Rat::from_integer(b.clone())) }
                        );
                    }
                }
            }
        }
    }
}
