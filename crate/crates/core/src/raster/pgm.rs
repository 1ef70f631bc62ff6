//! Binary PGM output and the `.meta` sidecar.

use std::fs;
use std::path::{Path, PathBuf};

use super::{EscapeGrid, RasterError, RasterJob, RenderMode};
use crate::dynamics::EscapeRadius;

/// Gray level: 0 for pixels that did not escape, else
/// `55 + ⌊200(n − 1)/max(1, max_iter − 1)⌋`.
fn gray(escaped: bool, n: u32, max_iter: usize) -> u8 {
    if !escaped {
        return 0;
    }
    let span = (max_iter as u64).saturating_sub(1).max(1);
    let level = 55 + 200 * (n as u64 - 1) / span;
    level.min(255) as u8
}

impl EscapeGrid {
    /// `P5\n<w> <h>\n255\n` followed by one byte per pixel, row-major.
    pub fn to_pgm_bytes(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.reserve(self.cells.len());
        out.extend(
            self.cells
                .iter()
                .map(|c| gray(c.escaped, c.n, self.max_iter)),
        );
        out
    }
}

pub fn write_pgm(grid: &EscapeGrid, path: &Path) -> Result<(), RasterError> {
    fs::write(path, grid.to_pgm_bytes())?;
    Ok(())
}

/// `image.pgm` → `image.meta`.
pub fn meta_path(image: &Path) -> PathBuf {
    image.with_extension("meta")
}

/// `key = value` lines describing how a grid was produced.
pub fn render_metadata(job: &RasterJob, radius: &EscapeRadius, grid: &EscapeGrid) -> String {
    let mut kv: Vec<(&str, String)> = vec![
        ("algebra", job.algebra.fingerprint()),
        ("dim", job.algebra.dim().to_string()),
    ];
    match &job.mode {
        RenderMode::Julia { c } => {
            kv.push(("mode", "julia".into()));
            kv.push(("c", c.to_string()));
            kv.push(("lambda", format!("{:?}", radius.lambda)));
        }
        RenderMode::Mandelbrot => {
            kv.push(("mode", "mandelbrot".into()));
            kv.push(("c", "pixel".into()));
            kv.push(("lambda", format!("{:?}", radius.mandelbrot_threshold)));
        }
    }
    kv.push(("window", job.window.to_string()));
    kv.push(("resolution", format!("{}x{}", job.width, job.height)));
    kv.push(("max_iter", job.max_iter.to_string()));
    match job.eta.as_ref().filter(|_| radius.certified) {
        Some(e) => {
            kv.push(("eta", format!("{:?}", e.eta)));
            kv.push(("eta_method", e.method.to_string()));
        }
        None => {
            kv.push(("eta", "none".into()));
            kv.push(("eta_method", "none".into()));
        }
    }
    kv.push(("certified", radius.certified.to_string()));
    kv.push(("slice_origin", job.slice.origin().to_string()));
    kv.push(("slice_axis1", job.slice.axis1().to_string()));
    kv.push(("slice_axis2", job.slice.axis2().to_string()));
    if job.algebra.dim() > 2 {
        let what = match job.mode {
            RenderMode::Julia { .. } => "filled Julia set",
            RenderMode::Mandelbrot => "Mandelbrot set",
        };
        kv.push(("note", format!("2-D slice of the {what}, not the full set")));
    }
    kv.push(("bounded_pixels", grid.bounded_count().to_string()));
    kv.into_iter()
        .map(|(k, v)| format!("{k} = {v}\n"))
        .collect()
}

pub fn write_meta(image: &Path, text: &str) -> Result<PathBuf, RasterError> {
    let path = meta_path(image);
    fs::write(&path, text)?;
    Ok(path)
}
