use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::{Manifest, SplitRole};

/// Entries sharing the same (sorted) tag set form one stratum.
fn stratum_key(tags: &[String]) -> String {
    let mut t = tags.to_vec();
    t.sort();
    t.join("|")
}

/// Seeded train/test split with `round(n * train_fraction)` training entries.
///
/// Each tag stratum receives its proportional share (largest-remainder
/// rounding), so per-stratum train counts are within one entry of exact.
pub fn split(manifest: &Manifest, train_fraction: f64, seed: u64) -> Result<Manifest> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::InvalidParam(format!(
            "train fraction must be in (0, 1), got {train_fraction}"
        )));
    }
    let n = manifest.entries.len();
    let n_train = (n as f64 * train_fraction).round() as usize;

    let mut strata: BTreeMap<String, Vec<&str>> = BTreeMap::new();
    for e in &manifest.entries {
        strata.entry(stratum_key(&e.tags)).or_default().push(&e.image_id);
    }

    let exact: Vec<f64> = strata.values().map(|ids| ids.len() as f64 * train_fraction).collect();
    let mut quota: Vec<usize> = exact.iter().map(|q| q.floor() as usize).collect();
    let assigned: usize = quota.iter().sum();
    let mut order: Vec<usize> = (0..quota.len()).collect();
    // largest remainder first; BTreeMap order breaks ties
    order.sort_by(|&a, &b| (exact[b] - exact[b].floor()).total_cmp(&(exact[a] - exact[a].floor())));
    for &i in order.iter().cycle().take(n_train.saturating_sub(assigned)) {
        quota[i] += 1;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = manifest.clone();
    out.split.clear();
    for (ids, &q) in strata.values().zip(&quota) {
        let mut ids = ids.clone();
        ids.shuffle(&mut rng);
        for (i, id) in ids.into_iter().enumerate() {
            let role = if i < q { SplitRole::Train } else { SplitRole::Test };
            out.split.insert(id.to_string(), role);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::ManifestEntry;

    fn manifest(n: usize, tag_of: impl Fn(usize) -> Vec<String>) -> Manifest {
        let entries = (0..n)
            .map(|i| ManifestEntry {
                image_id: format!("img{i:03}"),
                image: format!("img{i:03}.png").into(),
                mask: None,
                tags: tag_of(i),
            })
            .collect();
        Manifest::new(entries, ".").unwrap()
    }

    fn count(m: &Manifest, role: SplitRole) -> usize {
        m.split.values().filter(|&&r| r == role).count()
    }

    #[test]
    fn twenty_entries_split_17_3() {
        let m = split(&manifest(20, |_| vec![]), 0.85, 1).unwrap();
        assert_eq!((count(&m, SplitRole::Train), count(&m, SplitRole::Test)), (17, 3));
        assert_eq!(m.split.len(), 20);
    }

    #[test]
    fn deterministic_per_seed() {
        let base = manifest(30, |i| vec![format!("t{}", i % 3)]);
        assert_eq!(split(&base, 0.85, 5).unwrap(), split(&base, 0.85, 5).unwrap());
        assert_ne!(split(&base, 0.85, 5).unwrap().split, split(&base, 0.85, 6).unwrap().split);
    }

    #[test]
    fn strata_proportional() {
        let base = manifest(43, |i| match i % 5 {
            0 | 1 => vec!["worn".into()],
            2 => vec!["clean".into(), "dense".into()],
            _ => vec!["clean".into()],
        });
        let m = split(&base, 0.85, 11).unwrap();
        assert_eq!(count(&m, SplitRole::Train), 37);
        let mut by_key: BTreeMap<String, (usize, usize)> = BTreeMap::new();
        for e in &base.entries {
            let slot = by_key.entry(stratum_key(&e.tags)).or_default();
            slot.0 += 1;
            if m.split[&e.image_id] == SplitRole::Train {
                slot.1 += 1;
            }
        }
        for (key, (total, train)) in by_key {
            let exact = total as f64 * 0.85;
            assert!((train as f64 - exact).abs() <= 1.0, "{key}: {train} of {total}");
        }
    }

    #[test]
    fn bad_fraction() {
        assert!(split(&manifest(4, |_| vec![]), 1.0, 0).is_err());
        assert!(split(&manifest(4, |_| vec![]), 0.0, 0).is_err());
    }
}
