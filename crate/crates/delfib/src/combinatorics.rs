//! Chain compositions and binomial-sum counts for the higher families.
//!
//! A chain of total length `k` is an ordered composition of `k` into parts
//! of size 1 (a single element, written `S`) and size `ell + 1` (a merged
//! block, written `B`).  The number of such chains satisfies the recurrence
//! of the `higher(ell)` preset, and equals an explicit binomial sum.

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::report::VerificationReport;
use crate::sequences::{Natural, RecurrenceSpec};

/// Default ceiling on the number of structures a single enumeration may
/// materialize; larger counts should use [`binomial_sum`] instead.
pub const DEFAULT_ENUM_CAP: u64 = 10_000_000;

/// Largest chain length that `identity_check` verifies by exhaustive
/// enumeration; beyond this the enumeration dominates the runtime and the
/// binomial-sum comparison carries the check alone.
pub const IDENTITY_ENUM_LEN: u64 = 25;

/// Exact binomial coefficient by the multiplicative formula; each running
/// division is exact.
pub fn binomial(n: u64, k: u64) -> Natural {
    if k > n {
        return Natural::zero();
    }
    let k = k.min(n - k);
    let mut acc = Natural::one();
    for i in 0..k {
        acc = acc * Natural::from(n - i) / Natural::from(i + 1);
    }
    acc
}

/// Number of compositions of `k` into parts {1, ell + 1}:
/// sum over j with (ell + 1) * j <= k of C(k - ell * j, j).
pub fn binomial_sum(ell: u64, k: u64) -> Natural {
    assert!(ell >= 1, "ell must be positive");
    let mut total = Natural::zero();
    let mut j = 0;
    while (ell + 1) * j <= k {
        total += binomial(k - ell * j, j);
        j += 1;
    }
    total
}

/// One ordered composition of a chain into singles and blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComposition {
    parts: Vec<u32>,
    ell: u32,
}

impl ChainComposition {
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Total chain length, the sum of the parts.
    pub fn length(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Symbolic form using `S` for a single and `B` for a block.
    pub fn symbols(&self) -> String {
        self.parts
            .iter()
            .map(|&p| if p == 1 { 'S' } else { 'B' })
            .collect()
    }
}

/// All compositions of `length` into parts {1, ell + 1}, in lexicographic
/// order by parts (1 before ell + 1), under the default cap.
pub fn enumerate_chains(ell: u32, length: u64) -> Result<Vec<ChainComposition>> {
    enumerate_chains_with_cap(ell, length, DEFAULT_ENUM_CAP)
}

/// As [`enumerate_chains`] with an explicit structure cap.
pub fn enumerate_chains_with_cap(
    ell: u32,
    length: u64,
    cap: u64,
) -> Result<Vec<ChainComposition>> {
    assert!(ell >= 1, "ell must be positive");
    let count = binomial_sum(ell as u64, length);
    if count > Natural::from(cap) {
        return Err(Error::CapExceeded {
            cap,
            needed: count.to_u64().unwrap_or(u64::MAX),
        });
    }
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    let mut stack = Vec::new();
    fill(ell, length, &mut stack, &mut out);
    Ok(out)
}

fn fill(ell: u32, remaining: u64, stack: &mut Vec<u32>, out: &mut Vec<ChainComposition>) {
    if remaining == 0 {
        out.push(ChainComposition { parts: stack.clone(), ell });
        return;
    }
    stack.push(1);
    fill(ell, remaining - 1, stack, out);
    stack.pop();
    let block = ell as u64 + 1;
    if remaining >= block {
        stack.push(ell + 1);
        fill(ell, remaining - block, stack, out);
        stack.pop();
    }
}

/// Cross-checks the three counts for 0 <= k <= k_max: the binomial sum, the
/// recurrence value of the `higher(ell)` preset, and (for k up to
/// [`IDENTITY_ENUM_LEN`]) the exhaustive enumeration size.
pub fn identity_check(ell: u32, k_max: u64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let spec = RecurrenceSpec::higher(ell as usize).expect("ell >= 1 gives a valid spec");
    let mut binomial_divergence = None;
    let mut enumeration_divergence = None;
    for (k, term) in spec.natural_forward().take(k_max as usize + 1).enumerate() {
        let k = k as u64;
        let by_sum = binomial_sum(ell as u64, k);
        if by_sum != term && binomial_divergence.is_none() {
            binomial_divergence = Some((k, by_sum.clone(), term.clone()));
        }
        if k <= IDENTITY_ENUM_LEN {
            let listed = enumerate_chains(ell, k)
                .map(|chains| Natural::from(chains.len()))
                .unwrap_or_default();
            if listed != term && enumeration_divergence.is_none() {
                enumeration_divergence = Some((k, listed, term.clone()));
            }
        }
    }
    match binomial_divergence {
        None => report.record(
            format!("binomial sum vs recurrence (ell={ell})"),
            true,
            format!("agree for all k <= {k_max}"),
        ),
        Some((k, sum, term)) => report.record(
            format!("binomial sum vs recurrence (ell={ell})"),
            false,
            format!("first divergence at k={k}: sum {sum} vs term {term}"),
        ),
    }
    let enum_top = k_max.min(IDENTITY_ENUM_LEN);
    match enumeration_divergence {
        None => report.record(
            format!("enumeration vs recurrence (ell={ell})"),
            true,
            format!("agree for all k <= {enum_top}"),
        ),
        Some((k, listed, term)) => report.record(
            format!("enumeration vs recurrence (ell={ell})"),
            false,
            format!("first divergence at k={k}: {listed} structures vs term {term}"),
        ),
    }
    report
}

/// One table block from the transcription fixture.
#[derive(Clone, Debug)]
pub struct FixtureBlock {
    pub ell: u32,
    pub length: u64,
    pub count: u64,
    pub structures: Vec<String>,
}

/// Parses the bundled fixture format: a header `ell=<n> length=<k> count=<c>`
/// followed by `count` structure lines of `S` and `B` characters.
pub fn parse_fixture(text: &str) -> Result<Vec<FixtureBlock>> {
    let mut blocks: Vec<FixtureBlock> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Fixture(format!("line {}: {msg}", lineno + 1));
        if line.starts_with("ell=") {
            let mut fields = [None; 3];
            for part in line.split_whitespace() {
                let (key, value) = part
                    .split_once('=')
                    .ok_or_else(|| err(format!("malformed header field {part:?}")))?;
                let slot = match key {
                    "ell" => 0,
                    "length" => 1,
                    "count" => 2,
                    _ => return Err(err(format!("unknown header key {key:?}"))),
                };
                fields[slot] = Some(
                    value
                        .parse::<u64>()
                        .map_err(|_| err(format!("bad integer {value:?}")))?,
                );
            }
            let [Some(ell), Some(length), Some(count)] = fields else {
                return Err(err("header missing a field".into()));
            };
            blocks.push(FixtureBlock { ell: ell as u32, length, count, structures: Vec::new() });
        } else if line.chars().all(|c| c == 'S' || c == 'B') {
            let block = blocks
                .last_mut()
                .ok_or_else(|| err("structure line before any header".into()))?;
            block.structures.push(line.to_string());
        } else {
            return Err(err(format!("unrecognized line {line:?}")));
        }
    }
    for block in &blocks {
        if block.structures.len() as u64 != block.count {
            return Err(Error::Fixture(format!(
                "block ell={} length={} declares {} structures but lists {}",
                block.ell,
                block.length,
                block.count,
                block.structures.len()
            )));
        }
    }
    Ok(blocks)
}

/// Checks every fixture block against a fresh enumeration: equal counts and
/// equal structure multisets (the fixture's ordering is presentational).
pub fn verify_fixture(text: &str) -> Result<VerificationReport> {
    let blocks = parse_fixture(text)?;
    let mut report = VerificationReport::new();
    for block in &blocks {
        let chains = enumerate_chains(block.ell, block.length)?;
        let mut listed: Vec<String> = chains.iter().map(ChainComposition::symbols).collect();
        let mut transcribed = block.structures.clone();
        listed.sort();
        transcribed.sort();
        let lengths_ok = block
            .structures
            .iter()
            .all(|s| structure_length(block.ell, s) == block.length);
        let pass = listed == transcribed && lengths_ok;
        report.record(
            format!("table ell={} length={}", block.ell, block.length),
            pass,
            format!("{} transcribed vs {} enumerated", transcribed.len(), listed.len()),
        );
    }
    Ok(report)
}

fn structure_length(ell: u32, symbols: &str) -> u64 {
    symbols
        .chars()
        .map(|c| if c == 'S' { 1 } else { ell as u64 + 1 })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TABLES: &str = include_str!("../fixtures/tables.txt");

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(6, 0), Natural::from(1u32));
        assert_eq!(binomial(5, 1), Natural::from(5u32));
        assert_eq!(binomial(4, 2), Natural::from(6u32));
        assert_eq!(binomial(3, 3), Natural::from(1u32));
        assert_eq!(binomial(3, 5), Natural::from(0u32));
        assert_eq!(binomial(50, 25), "126410606437752".parse().unwrap());
    }

    #[test]
    fn binomial_sum_examples() {
        assert_eq!(binomial_sum(1, 6), Natural::from(13u32));
        assert_eq!(binomial_sum(2, 8), Natural::from(13u32));
        assert_eq!(binomial_sum(3, 9), Natural::from(10u32));
        assert_eq!(binomial_sum(2, 0), Natural::from(1u32));
    }

    #[test]
    fn enumeration_examples() {
        let pairs = enumerate_chains(1, 4).unwrap();
        assert_eq!(
            pairs.iter().map(ChainComposition::symbols).collect::<Vec<_>>(),
            ["SSSS", "SSB", "SBS", "BSS", "BB"]
        );
        let quads = enumerate_chains(3, 4).unwrap();
        assert_eq!(
            quads.iter().map(ChainComposition::symbols).collect::<Vec<_>>(),
            ["SSSS", "B"]
        );
        assert_eq!(enumerate_chains(2, 6).unwrap().len(), 6);
        let empty = enumerate_chains(1, 0).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].parts().is_empty());
    }

    #[test]
    fn enumeration_is_lexicographic_and_consistent() {
        for ell in 1..=3u32 {
            for length in 0..=14u64 {
                let chains = enumerate_chains(ell, length).unwrap();
                assert_eq!(
                    Natural::from(chains.len()),
                    binomial_sum(ell as u64, length)
                );
                for pair in chains.windows(2) {
                    assert!(pair[0].parts() < pair[1].parts());
                }
                for chain in &chains {
                    assert_eq!(chain.length(), length);
                    assert!(chain.parts().iter().all(|&p| p == 1 || p == ell + 1));
                }
            }
        }
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        match enumerate_chains_with_cap(1, 30, 1000) {
            Err(Error::CapExceeded { cap: 1000, needed }) => {
                assert_eq!(Natural::from(needed), binomial_sum(1, 30));
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn identity_holds_for_all_three_families() {
        for ell in 1..=3 {
            let report = identity_check(ell, 60);
            assert!(report.passed(), "ell={ell}:\n{report}");
        }
    }

    #[test]
    fn fixture_matches_enumeration() {
        let report = verify_fixture(TABLES).unwrap();
        assert_eq!(report.checks().len(), 6 + 8 + 9);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn fixture_counts_follow_the_published_tables() {
        let blocks = parse_fixture(TABLES).unwrap();
        let counts = |ell: u32| -> Vec<u64> {
            blocks.iter().filter(|b| b.ell == ell).map(|b| b.count).collect()
        };
        assert_eq!(counts(1), [1, 2, 3, 5, 8, 13]);
        assert_eq!(counts(2), [1, 1, 2, 3, 4, 6, 9, 13]);
        assert_eq!(counts(3), [1, 1, 1, 2, 3, 4, 5, 7, 10]);
    }

    #[test]
    fn malformed_fixtures_are_rejected() {
        assert!(parse_fixture("SB\n").is_err());
        assert!(parse_fixture("ell=1 length=2\nSS\nB\n").is_err());
        assert!(parse_fixture("ell=1 length=2 count=2\nSS\n").is_err());
        assert!(parse_fixture("ell=1 length=2 count=1\nSX\n").is_err());
    }

    proptest! {
        #[test]
        fn counts_agree_with_recurrence(ell in 1u32..=4, k in 0u64..=18) {
            let spec = RecurrenceSpec::higher(ell as usize).unwrap();
            let term = spec.natural_term(k as i64);
            prop_assert_eq!(binomial_sum(ell as u64, k), term.clone());
            prop_assert_eq!(Natural::from(enumerate_chains(ell, k).unwrap().len()), term);
        }
    }
}
