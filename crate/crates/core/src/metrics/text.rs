use crate::error::{Error, Result};

/// Levenshtein distance with unit substitution, insertion and deletion costs.
pub fn edit_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, x) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(x != y);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Word error rate over whitespace-separated tokens.
pub fn wer(reference: &str, hypothesis: &str) -> Result<f64> {
    let r: Vec<&str> = reference.split_whitespace().collect();
    if r.is_empty() {
        return Err(Error::EmptyReference);
    }
    let h: Vec<&str> = hypothesis.split_whitespace().collect();
    Ok(edit_distance(&r, &h) as f64 / r.len() as f64)
}

/// Character error rate. Runs of whitespace collapse to a single space and
/// leading/trailing whitespace is ignored.
pub fn cer(reference: &str, hypothesis: &str) -> Result<f64> {
    let norm = |s: &str| s.split_whitespace().collect::<Vec<_>>().join(" ").chars().collect::<Vec<char>>();
    let r = norm(reference);
    if r.is_empty() {
        return Err(Error::EmptyReference);
    }
    Ok(edit_distance(&r, &norm(hypothesis)) as f64 / r.len() as f64)
}

pub fn wer_cer(reference: &str, hypothesis: &str) -> Result<(f64, f64)> {
    Ok((wer(reference, hypothesis)?, cer(reference, hypothesis)?))
}
