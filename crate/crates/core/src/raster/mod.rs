//! Escape-time rasters of filled Julia and Mandelbrot sets over a 2-D
//! affine slice of the algebra.
//!
//! Pixel `(px, py)` samples its center: `x = xmin + (px + ½)(xmax − xmin)/w`,
//! `y = ymax − (py + ½)(ymax − ymin)/h` (rows run downward), and maps to
//! `origin + x·axis1 + y·axis2`. Pixels are independent, so the image does
//! not depend on the tiling or the number of workers.

mod pgm;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Element, StructureConstants};
use crate::analysis::EtaCertificate;
use crate::dynamics::{escape_radius, EscapeRadius, OrbitBuffers, OrbitKind};

pub use pgm::{meta_path, render_metadata, write_meta, write_pgm};

/// Upper bound on `width · height`.
pub const MAX_PIXELS: u64 = 100_000_000;

const TILE: usize = 64;

#[derive(Debug, Error)]
pub enum RasterError {
    #[error("window needs xmin < xmax and ymin < ymax, got {0}")]
    InvalidWindow(String),
    #[error("slice axes are not linearly independent (Gram determinant {gram:e})")]
    DegenerateSlice { gram: f64 },
    #[error("element has dimension {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{width}x{height} raster exceeds {MAX_PIXELS} pixels")]
    TooLarge { width: usize, height: usize },
    #[error("raster needs positive width, height and max_iter")]
    Empty,
    #[error("pixel ({px}, {py}) outside {width}x{height}")]
    OutOfRange {
        px: usize,
        py: usize,
        width: usize,
        height: usize,
    },
    #[error(
        "no square-inequality constant (eta = 0); pass an uncertified bailout to render anyway"
    )]
    SquareInequalityUnavailable,
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// The plane `origin + x·axis1 + y·axis2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceSpec {
    origin: Element,
    axis1: Element,
    axis2: Element,
}

impl SliceSpec {
    pub fn new(origin: Element, axis1: Element, axis2: Element) -> Result<Self, RasterError> {
        for v in [&axis1, &axis2] {
            if v.dim() != origin.dim() {
                return Err(RasterError::DimensionMismatch {
                    expected: origin.dim(),
                    found: v.dim(),
                });
            }
        }
        let gram = axis1.norm_sq() * axis2.norm_sq() - axis1.dot(&axis2).powi(2);
        if !(gram > 1e-12) {
            return Err(RasterError::DegenerateSlice { gram });
        }
        Ok(Self {
            origin,
            axis1,
            axis2,
        })
    }

    /// Origin 0, axes `e₁` and `e₂`; needs `dim ≥ 2`.
    pub fn identity(dim: usize) -> Self {
        Self::coordinate_plane(Element::zero(dim), 0, 1)
    }

    /// The plane through `origin` spanned by basis vectors `i` and `j`.
    pub fn coordinate_plane(origin: Element, i: usize, j: usize) -> Self {
        let dim = origin.dim();
        assert!(
            i != j && i < dim && j < dim,
            "bad coordinate plane ({i}, {j}) in dimension {dim}"
        );
        Self {
            origin,
            axis1: Element::basis(dim, i),
            axis2: Element::basis(dim, j),
        }
    }

    pub fn origin(&self) -> &Element {
        &self.origin
    }

    pub fn axis1(&self) -> &Element {
        &self.axis1
    }

    pub fn axis2(&self) -> &Element {
        &self.axis2
    }

    pub fn dim(&self) -> usize {
        self.origin.dim()
    }

    fn point_into(&self, x: f64, y: f64, out: &mut [f64]) {
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.origin[k] + x * self.axis1[k] + y * self.axis2[k];
        }
    }

    pub fn point(&self, x: f64, y: f64) -> Element {
        let mut out = vec![0.0; self.dim()];
        self.point_into(x, y, &mut out);
        Element::new(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Window {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self, RasterError> {
        let w = Self {
            xmin,
            xmax,
            ymin,
            ymax,
        };
        if !(xmin < xmax && ymin < ymax) || ![xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite())
        {
            return Err(RasterError::InvalidWindow(w.to_string()));
        }
        Ok(w)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?},{:?},{:?},{:?}",
            self.xmin, self.xmax, self.ymin, self.ymax
        )
    }
}

impl FromStr for Window {
    type Err = String;
    /// `xmin,xmax,ymin,ymax`.
    fn from_str(s: &str) -> Result<Self, String> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("`{t}` is not a number"))
            })
            .collect::<Result<_, _>>()?;
        if v.len() != 4 {
            return Err(format!(
                "window needs 4 values xmin,xmax,ymin,ymax, got {}",
                v.len()
            ));
        }
        Window::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RenderMode {
    /// Pixels are starting points `u` for a fixed `c`.
    Julia { c: Element },
    /// Pixels are parameters `c`; orbits start at 0.
    Mandelbrot,
}

#[derive(Debug, Clone)]
pub struct RasterJob {
    pub algebra: StructureConstants,
    pub mode: RenderMode,
    pub slice: SliceSpec,
    pub window: Window,
    pub width: usize,
    pub height: usize,
    pub max_iter: usize,
    pub eta: Option<EtaCertificate>,
    /// Heuristic bailout used when `eta` does not certify escapes.
    pub uncertified_bailout: Option<f64>,
}

impl RasterJob {
    /// Job with the identity slice and no `η`; set `eta` or
    /// `uncertified_bailout` before rendering.
    pub fn new(
        algebra: StructureConstants,
        mode: RenderMode,
        window: Window,
        width: usize,
        height: usize,
        max_iter: usize,
    ) -> Self {
        let slice = SliceSpec::identity(algebra.dim());
        Self {
            algebra,
            mode,
            slice,
            window,
            width,
            height,
            max_iter,
            eta: None,
            uncertified_bailout: None,
        }
    }

    pub fn with_eta(mut self, eta: EtaCertificate) -> Self {
        self.eta = Some(eta);
        self
    }

    pub fn with_slice(mut self, slice: SliceSpec) -> Self {
        self.slice = slice;
        self
    }

    pub fn with_uncertified_bailout(mut self, bailout: f64) -> Self {
        self.uncertified_bailout = Some(bailout);
        self
    }

    pub fn validate(&self) -> Result<(), RasterError> {
        let dim = self.algebra.dim();
        let mismatch = |found| RasterError::DimensionMismatch {
            expected: dim,
            found,
        };
        if self.slice.dim() != dim {
            return Err(mismatch(self.slice.dim()));
        }
        if let RenderMode::Julia { c } = &self.mode {
            if c.dim() != dim {
                return Err(mismatch(c.dim()));
            }
        }
        if self.width == 0 || self.height == 0 || self.max_iter == 0 {
            return Err(RasterError::Empty);
        }
        if (self.width as u64).saturating_mul(self.height as u64) > MAX_PIXELS {
            return Err(RasterError::TooLarge {
                width: self.width,
                height: self.height,
            });
        }
        Window::new(
            self.window.xmin,
            self.window.xmax,
            self.window.ymin,
            self.window.ymax,
        )?;
        Ok(())
    }

    /// Thresholds from `eta` when it certifies escapes, else the
    /// uncertified bailout.
    pub fn escape_radius(&self) -> Result<EscapeRadius, RasterError> {
        let c = match &self.mode {
            RenderMode::Julia { c } => c.clone(),
            RenderMode::Mandelbrot => Element::zero(self.algebra.dim()),
        };
        if let Some(eta) = self.eta.as_ref().filter(|e| e.is_certified()) {
            return escape_radius(eta, &c).map_err(|_| RasterError::SquareInequalityUnavailable);
        }
        match self.uncertified_bailout {
            Some(b) => Ok(EscapeRadius::uncertified(b)),
            None => Err(RasterError::SquareInequalityUnavailable),
        }
    }

    fn pixel_xy(&self, px: usize, py: usize) -> (f64, f64) {
        let w = &self.window;
        let x = w.xmin + (px as f64 + 0.5) * (w.xmax - w.xmin) / self.width as f64;
        let y = w.ymax - (py as f64 + 0.5) * (w.ymax - w.ymin) / self.height as f64;
        (x, y)
    }

    /// Length of a pixel diagonal in slice coordinates.
    pub fn pixel_diagonal(&self) -> f64 {
        let w = &self.window;
        ((w.xmax - w.xmin) / self.width as f64).hypot((w.ymax - w.ymin) / self.height as f64)
    }
}

pub fn pixel_to_element(job: &RasterJob, px: usize, py: usize) -> Result<Element, RasterError> {
    if px >= job.width || py >= job.height {
        return Err(RasterError::OutOfRange {
            px,
            py,
            width: job.width,
            height: job.height,
        });
    }
    let (x, y) = job.pixel_xy(px, py);
    Ok(job.slice.point(x, y))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub escaped: bool,
    /// Escape index, or `max_iter` for pixels that did not escape.
    pub n: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeGrid {
    pub width: usize,
    pub height: usize,
    pub max_iter: usize,
    /// Row-major, top row first.
    pub cells: Vec<Cell>,
}

impl EscapeGrid {
    pub fn get(&self, px: usize, py: usize) -> Cell {
        self.cells[py * self.width + px]
    }

    pub fn bounded_count(&self) -> usize {
        self.cells.iter().filter(|c| !c.escaped).count()
    }
}

/// Renders on the global rayon pool.
pub fn render(job: &RasterJob) -> Result<EscapeGrid, RasterError> {
    let radius = job.escape_radius()?;
    job.validate()?;
    Ok(render_tiles(job, &radius))
}

/// Renders on a dedicated pool of `workers` threads (0 picks rayon's
/// default).
pub fn render_with_workers(job: &RasterJob, workers: usize) -> Result<EscapeGrid, RasterError> {
    let radius = job.escape_radius()?;
    job.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| RasterError::ThreadPool(e.to_string()))?;
    Ok(pool.install(|| render_tiles(job, &radius)))
}

fn render_tiles(job: &RasterJob, radius: &EscapeRadius) -> EscapeGrid {
    let tiles_x = job.width.div_ceil(TILE);
    let tiles_y = job.height.div_ceil(TILE);
    let tiles: Vec<(usize, Vec<Cell>)> = (0..tiles_x * tiles_y)
        .into_par_iter()
        .map(|t| (t, render_tile(job, radius, t % tiles_x, t / tiles_x)))
        .collect();

    let mut cells = vec![
        Cell {
            escaped: false,
            n: 0
        };
        job.width * job.height
    ];
    for (t, tile) in tiles {
        let (x0, y0) = ((t % tiles_x) * TILE, (t / tiles_x) * TILE);
        let tw = TILE.min(job.width - x0);
        for (row, chunk) in tile.chunks(tw).enumerate() {
            let start = (y0 + row) * job.width + x0;
            cells[start..start + tw].copy_from_slice(chunk);
        }
    }
    EscapeGrid {
        width: job.width,
        height: job.height,
        max_iter: job.max_iter,
        cells,
    }
}

fn render_tile(job: &RasterJob, radius: &EscapeRadius, tx: usize, ty: usize) -> Vec<Cell> {
    let dim = job.algebra.dim();
    let (x0, y0) = (tx * TILE, ty * TILE);
    let x1 = (x0 + TILE).min(job.width);
    let y1 = (y0 + TILE).min(job.height);
    let mut buffers = OrbitBuffers::new(dim);
    let mut point = vec![0.0; dim];
    let zero = vec![0.0; dim];
    let mut out = Vec::with_capacity((x1 - x0) * (y1 - y0));
    for py in y0..y1 {
        for px in x0..x1 {
            let (x, y) = job.pixel_xy(px, py);
            job.slice.point_into(x, y, &mut point);
            let kind = match &job.mode {
                RenderMode::Julia { c } => buffers.classify(
                    &job.algebra,
                    c.coords(),
                    &point,
                    radius.lambda,
                    job.max_iter,
                    true,
                ),
                RenderMode::Mandelbrot => buffers.classify(
                    &job.algebra,
                    &point,
                    &zero,
                    radius.mandelbrot_threshold,
                    job.max_iter,
                    false,
                ),
            };
            out.push(match kind {
                OrbitKind::Escaped { n, .. } => Cell {
                    escaped: true,
                    n: n as u32,
                },
                _ => Cell {
                    escaped: false,
                    n: job.max_iter as u32,
                },
            });
        }
    }
    out
}
