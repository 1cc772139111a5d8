use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::imgcore::load_mask;

use super::{evaluate_pair, mean_report, EvalReport};

const IMAGE_EXTENSIONS: &[&str] = &["png", "tif", "tiff"];

/// Image files in `dir` keyed by file stem.
fn images_by_stem(dir: &Path) -> Result<BTreeMap<String, PathBuf>> {
    let mut out = BTreeMap::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        let ext = path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase);
        if !path.is_file() || !ext.is_some_and(|e| IMAGE_EXTENSIONS.contains(&e.as_str())) {
            continue;
        }
        if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
            if out.insert(stem.to_string(), path.clone()).is_some() {
                return Err(Error::Manifest(format!("two files share the stem `{stem}` in {}", dir.display())));
            }
        }
    }
    Ok(out)
}

/// Scores every prediction in `pred_dir` against the same-stem mask in `gt_dir`.
///
/// Rows come back sorted by id. Stems present on one side only are reported
/// together as [`Error::UnmatchedPair`].
pub fn evaluate_dirs(pred_dir: &Path, gt_dir: &Path) -> Result<Vec<(String, EvalReport)>> {
    let preds = images_by_stem(pred_dir)?;
    let gts = images_by_stem(gt_dir)?;
    let unmatched: Vec<String> = preds
        .keys()
        .filter(|k| !gts.contains_key(*k))
        .chain(gts.keys().filter(|k| !preds.contains_key(*k)))
        .cloned()
        .collect();
    if !unmatched.is_empty() {
        return Err(Error::UnmatchedPair(unmatched));
    }
    if preds.is_empty() {
        return Err(Error::EmptySet);
    }
    let pairs: Vec<_> = preds.iter().map(|(id, p)| (id, p, &gts[id])).collect();
    pairs
        .par_iter()
        .map(|(id, p, g)| Ok(((*id).clone(), evaluate_pair(&load_mask(p)?, &load_mask(g)?)?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalSummary {
    pub images: usize,
    pub mean: EvalReport,
    /// Ids whose DRD used the NUBN = 1 fallback.
    pub drd_degenerate: Vec<String>,
}

impl EvalSummary {
    pub fn from_rows(rows: &[(String, EvalReport)]) -> Result<Self> {
        let reports: Vec<EvalReport> = rows.iter().map(|(_, r)| *r).collect();
        Ok(Self {
            images: rows.len(),
            mean: mean_report(&reports)?,
            drd_degenerate: rows.iter().filter(|(_, r)| r.drd_degenerate).map(|(id, _)| id.clone()).collect(),
        })
    }
}

/// `image_id,psnr,fm,fps,drd`, one row per image.
pub fn write_eval_csv(rows: &[(String, EvalReport)], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let to_err = |e: csv::Error| Error::io(Path::new("<csv>"), std::io::Error::other(e));
    w.write_record(["image_id", "psnr", "fm", "fps", "drd"]).map_err(to_err)?;
    for (id, r) in rows {
        w.write_record([id.clone(), r.psnr.to_string(), r.fm.to_string(), r.fps.to_string(), r.drd.to_string()])
            .map_err(to_err)?;
    }
    w.flush().map_err(|e| Error::io(Path::new("<csv>"), e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::imgcore::{save_mask, BinaryMask, Rect};

    fn mask(seed: usize) -> BinaryMask {
        let mut m = BinaryMask::filled(24, 16, false).unwrap();
        m.fill_rect(Rect::new(2 + seed, 3, 6, 7), true);
        m
    }

    #[test]
    fn identical_dirs_score_perfectly() {
        let dir = tempfile::tempdir().unwrap();
        let (p, g) = (dir.path().join("pred"), dir.path().join("gt"));
        fs::create_dir_all(&p).unwrap();
        fs::create_dir_all(&g).unwrap();
        for (i, id) in ["b", "a", "c"].iter().enumerate() {
            save_mask(&mask(i), p.join(format!("{id}.png"))).unwrap();
            save_mask(&mask(i), g.join(format!("{id}.png"))).unwrap();
        }
        let rows = evaluate_dirs(&p, &g).unwrap();
        let ids: Vec<_> = rows.iter().map(|(id, _)| id.as_str()).collect();
        assert_eq!(ids, ["a", "b", "c"]);
        assert!(rows.iter().all(|(_, r)| r.fm == 100.0 && r.drd == 0.0));

        let mut buf = Vec::new();
        write_eval_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("image_id,psnr,fm,fps,drd\na,100,100,100,0\n"));
    }

    #[test]
    fn unmatched_stems_listed() {
        let dir = tempfile::tempdir().unwrap();
        let (p, g) = (dir.path().join("pred"), dir.path().join("gt"));
        fs::create_dir_all(&p).unwrap();
        fs::create_dir_all(&g).unwrap();
        save_mask(&mask(0), p.join("a.png")).unwrap();
        save_mask(&mask(0), g.join("a.png")).unwrap();
        save_mask(&mask(0), p.join("only_pred.png")).unwrap();
        save_mask(&mask(0), g.join("only_gt.png")).unwrap();
        match evaluate_dirs(&p, &g) {
            Err(Error::UnmatchedPair(ids)) => assert_eq!(ids, ["only_pred", "only_gt"]),
            other => panic!("{other:?}"),
        }
    }
}
