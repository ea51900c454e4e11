//! Range runner with deterministic output, checkpointing and resume.
//!
//! Workers enumerate dimensions independently; a single collector emits
//! blocks in ascending order, so the output is byte-identical for any
//! worker count. After each block the checkpoint records the dimension and
//! a digest of the exact bytes written, which is what `--resume` verifies.

use crate::records::{records_for, SCHEMA_VERSION};
use anyhow::{bail, ensure, Context, Result};
use scroll_core::{enumerate_n, Classification, EnumOptions, EnumReport};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::mpsc;

/// Run `enumerate_n` over `from..=to` and hand each report to `sink` in
/// ascending order of `n`, regardless of worker count.
pub fn run_range<F>(from: u64, to: u64, jobs: usize, mut sink: F) -> Result<()>
where
    F: FnMut(&EnumReport) -> Result<()>,
{
    assert!(from <= to);
    let options = EnumOptions::default();
    let jobs = jobs.max(1);
    if jobs == 1 {
        for n in from..=to {
            sink(&enumerate_n(n, &options))?;
        }
        return Ok(());
    }
    let next = AtomicU64::new(from);
    std::thread::scope(|scope| -> Result<()> {
        let (tx, rx) = mpsc::channel::<EnumReport>();
        for _ in 0..jobs {
            let tx = tx.clone();
            let next = &next;
            scope.spawn(move || loop {
                let n = next.fetch_add(1, Ordering::Relaxed);
                if n > to {
                    break;
                }
                if tx.send(enumerate_n(n, &options)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut pending: BTreeMap<u64, EnumReport> = BTreeMap::new();
        let mut next_write = from;
        for report in rx {
            pending.insert(report.n, report);
            while let Some(ready) = pending.remove(&next_write) {
                sink(&ready)?;
                next_write += 1;
            }
        }
        ensure!(next_write == to + 1, "range did not complete");
        Ok(())
    })
}

/// The bytes a sweep writes for one dimension: one JSON line per raw
/// candidate (possibly none).
pub fn render_block(report: &EnumReport) -> String {
    let mut block = String::new();
    for record in records_for(report) {
        block.push_str(&record.to_json());
        block.push('\n');
    }
    block
}

pub fn digest_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn checkpoint_path(out: &Path) -> PathBuf {
    let mut name = out
        .file_name()
        .map(|s| s.to_os_string())
        .unwrap_or_default();
    name.push(".checkpoint");
    out.with_file_name(name)
}

#[derive(Serialize, Deserialize)]
struct CheckpointHeader {
    schema_version: u32,
    from: u64,
}

#[derive(Serialize, Deserialize)]
struct CheckpointEntry {
    n: u64,
    digest: String,
}

fn load_checkpoint(path: &Path) -> Result<(u64, Vec<CheckpointEntry>)> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading checkpoint {}", path.display()))?;
    let mut lines = text.lines();
    let header_line = lines.next().context("checkpoint is empty")?;
    let header: CheckpointHeader =
        serde_json::from_str(header_line).context("unreadable checkpoint header")?;
    if header.schema_version != SCHEMA_VERSION {
        bail!(
            "checkpoint schema mismatch (found {}, expected {}): \
             remove {} and the output file, then restart without --resume",
            header.schema_version,
            SCHEMA_VERSION,
            path.display()
        );
    }
    let mut entries = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        entries.push(serde_json::from_str::<CheckpointEntry>(line).context("bad checkpoint entry")?);
    }
    Ok((header.from, entries))
}

struct ResumeState {
    /// First dimension still to run.
    next_n: u64,
    /// Exact bytes of the verified prefix of the output file.
    verified: String,
    /// Checkpoint lines covering the verified prefix.
    checkpoint_lines: String,
}

/// Verify a previous partial sweep: every checkpointed block must hash to
/// its recorded digest. Stale bytes past the last checkpointed block
/// (an interrupted write) are dropped.
fn verify_previous(out: &Path, ckpt: &Path, from: u64, to: u64) -> Result<ResumeState> {
    let (ck_from, entries) = load_checkpoint(ckpt)?;
    ensure!(
        ck_from == from,
        "checkpoint starts at {ck_from} but this sweep starts at {from}; \
         restart without --resume"
    );
    let mut checkpoint_lines = format!(
        "{}\n",
        serde_json::to_string(&CheckpointHeader {
            schema_version: SCHEMA_VERSION,
            from,
        })?
    );
    if entries.is_empty() {
        return Ok(ResumeState {
            next_n: from,
            verified: String::new(),
            checkpoint_lines,
        });
    }
    for (i, entry) in entries.iter().enumerate() {
        ensure!(
            entry.n == from + i as u64,
            "checkpoint is not a contiguous run starting at {from}"
        );
    }
    let last = entries.last().expect("nonempty").n;
    ensure!(
        to >= last,
        "sweep ends at {to} but the checkpoint already covers {last}; \
         restart without --resume to shrink the range"
    );

    // split the output file into per-n blocks, ascending, dropping a
    // trailing partial line if the previous run died mid-write
    let text = fs::read_to_string(out)
        .with_context(|| format!("reading output file {}", out.display()))?;
    let mut blocks: Vec<(u64, String)> = Vec::new();
    let mut offset = 0usize;
    while offset < text.len() {
        let end = match text[offset..].find('\n') {
            Some(rel) => offset + rel + 1,
            None => break, // partial trailing line: dropped
        };
        let line = &text[offset..end];
        let n = match serde_json::from_str::<serde_json::Value>(line.trim_end()) {
            Ok(value) => value
                .get("n")
                .and_then(|v| v.as_u64())
                .context("record line without an \"n\" field")?,
            Err(_) if end == text.len() => break, // partial final line
            Err(e) => return Err(e).context("unreadable record line"),
        };
        match blocks.last_mut() {
            Some((block_n, block)) if *block_n == n => block.push_str(line),
            _ => {
                if let Some((prev, _)) = blocks.last() {
                    ensure!(*prev < n, "output file blocks out of order");
                }
                blocks.push((n, line.to_string()));
            }
        }
        offset = end;
    }

    let mut verified = String::new();
    let mut block_iter = blocks.into_iter().peekable();
    for entry in &entries {
        let block = match block_iter.peek() {
            Some((n, _)) if *n == entry.n => block_iter.next().expect("peeked").1,
            _ => String::new(), // no candidates at this dimension
        };
        ensure!(
            digest_hex(block.as_bytes()) == entry.digest,
            "digest mismatch for n = {}: the output file does not match the \
             checkpoint; restart without --resume",
            entry.n
        );
        verified.push_str(&block);
        checkpoint_lines.push_str(&serde_json::to_string(entry)?);
        checkpoint_lines.push('\n');
    }
    // anything past the last checkpointed block is an uncommitted tail

    Ok(ResumeState {
        next_n: last + 1,
        verified,
        checkpoint_lines,
    })
}

pub struct SweepOutcome {
    pub violations: usize,
}

/// A survivor whose sectional genus escapes the degree-d curve bound would
/// rule the candidate out geometrically; none is expected, so finding one
/// is worth shouting about. Diagnostic only: never changes the exit code.
pub fn report_genus_bound_breach(
    n: u64,
    pair: &scroll_core::CandidatePair,
    inv: &scroll_core::SurfaceInvariants,
) {
    match &inv.genus {
        Some(genus) if genus > &inv.cast_bound => eprintln!(
            "GENUS BOUND BREACH: n = {n}, d = {}: sectional genus {} exceeds \
             the curve bound {}",
            pair.d, genus, inv.cast_bound
        ),
        Some(_) => {}
        None => eprintln!(
            "GENUS PARITY DEFECT: n = {n}, d = {}: (a+b)(d+e2)/b is odd or \
             fractional",
            pair.d
        ),
    }
}

/// Full sweep with file output and checkpointing. Returns the number of
/// candidates that survived every filter without matching any expected
/// shape (conjecture violations).
pub fn sweep_to_file(
    from: u64,
    to: u64,
    jobs: usize,
    out: &Path,
    resume: bool,
) -> Result<SweepOutcome> {
    let ckpt = checkpoint_path(out);
    let start;
    if resume && ckpt.exists() && out.exists() {
        let state = verify_previous(out, &ckpt, from, to)?;
        fs::write(out, &state.verified)?;
        fs::write(&ckpt, &state.checkpoint_lines)?;
        start = state.next_n;
        eprintln!(
            "resume: verified {} checkpointed dimensions, continuing at n = {start}",
            start - from
        );
    } else {
        fs::write(out, "")?;
        let header = serde_json::to_string(&CheckpointHeader {
            schema_version: SCHEMA_VERSION,
            from,
        })?;
        fs::write(&ckpt, format!("{header}\n"))?;
        start = from;
    }

    let mut out_file = fs::OpenOptions::new().append(true).open(out)?;
    let mut ckpt_file = fs::OpenOptions::new().append(true).open(&ckpt)?;
    let mut violations = 0usize;

    if start <= to {
        run_range(start, to, jobs, |report| {
            let block = render_block(report);
            out_file.write_all(block.as_bytes())?;
            out_file.flush()?;
            let entry = CheckpointEntry {
                n: report.n,
                digest: digest_hex(block.as_bytes()),
            };
            writeln!(ckpt_file, "{}", serde_json::to_string(&entry)?)?;
            ckpt_file.flush()?;
            for (pair, inv, class) in report.filtered() {
                if class == Classification::UnexpectedGeneralType {
                    violations += 1;
                    eprintln!(
                        "CONJECTURE VIOLATION: n = {}, d = {}, e2 = {} survived every \
                         filter but matches no expected shape",
                        report.n, pair.d, pair.e2
                    );
                }
                report_genus_bound_breach(report.n, pair, inv);
            }
            Ok(())
        })?;
    }
    Ok(SweepOutcome { violations })
}
