//! Pixel grids and membership scanning.
//!
//! Each pixel is an independent orbit classification, so the scan is
//! embarrassingly parallel. With the `parallel` feature (on by default)
//! rows are distributed over a rayon pool sized by the requested worker
//! count; without it every scan runs sequentially. Results are identical
//! either way: a pixel's value depends only on its own center.

use std::fmt;

use crate::complex::Complex;
use crate::escape::{classify_orbit, OrbitStatus};
use crate::recurrence::Recurrence;

/// Rectangular window and resolution. Pixel `(i, j)` samples the center
/// of its cell, row `j = 0` at the top (largest imaginary part).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub width: u32,
    pub height: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvalidGrid(pub &'static str);

impl fmt::Display for InvalidGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid grid: {}", self.0)
    }
}

impl std::error::Error for InvalidGrid {}

impl GridSpec {
    pub fn new(
        re_min: f64,
        re_max: f64,
        im_min: f64,
        im_max: f64,
        width: u32,
        height: u32,
    ) -> Result<Self, InvalidGrid> {
        if ![re_min, re_max, im_min, im_max]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(InvalidGrid("window bounds must be finite"));
        }
        if re_min >= re_max || im_min >= im_max {
            return Err(InvalidGrid(
                "window must satisfy re_min < re_max, im_min < im_max",
            ));
        }
        if width == 0 || height == 0 {
            return Err(InvalidGrid("width and height must be positive"));
        }
        Ok(Self {
            re_min,
            re_max,
            im_min,
            im_max,
            width,
            height,
        })
    }

    /// The default framing window shared by the presets.
    pub fn default_window(width: u32, height: u32) -> Self {
        Self::new(-2.5, 1.5, -2.0, 2.0, width, height).expect("static bounds")
    }

    pub fn pixel_count(&self) -> usize {
        self.width as usize * self.height as usize
    }

    fn delta_re(&self) -> f64 {
        (self.re_max - self.re_min) / f64::from(self.width)
    }

    fn delta_im(&self) -> f64 {
        (self.im_max - self.im_min) / f64::from(self.height)
    }

    /// Center of pixel `(i, j)`.
    ///
    /// Coordinates are built from signed offsets around the window center
    /// so that a window symmetric about the real axis samples exactly
    /// conjugate points in mirrored rows; symmetric recurrences then
    /// render mirror-identical images at the byte level.
    pub fn pixel_center(&self, i: u32, j: u32) -> Complex {
        let re_center = 0.5 * (self.re_min + self.re_max);
        let im_center = 0.5 * (self.im_min + self.im_max);
        let re_offset = f64::from(i) - 0.5 * (f64::from(self.width) - 1.0);
        let im_offset = 0.5 * (f64::from(self.height) - 1.0) - f64::from(j);
        Complex::new(
            re_center + re_offset * self.delta_re(),
            im_center + im_offset * self.delta_im(),
        )
    }
}

/// Escape radius policy for a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EscapeRadius {
    /// One radius for every pixel.
    Fixed(f64),
    /// Per-pixel `max(2, |c|) + 1`, a sufficient bailout for the plain
    /// power maps `z^d + c`.
    PowerAuto,
}

impl EscapeRadius {
    /// Family default: plain power maps get the per-pixel automatic
    /// bailout, everything else a safe fixed 4.
    pub fn default_for(spec: &Recurrence) -> Self {
        match spec {
            Recurrence::PlainPower { .. } => EscapeRadius::PowerAuto,
            _ => EscapeRadius::Fixed(4.0),
        }
    }

    pub fn effective(&self, c: Complex) -> f64 {
        match self {
            EscapeRadius::Fixed(r) => *r,
            EscapeRadius::PowerAuto => c.norm().max(2.0) + 1.0,
        }
    }

    pub fn validate(&self) -> Result<(), InvalidGrid> {
        match self {
            EscapeRadius::Fixed(r) if !(*r >= 1.0 && r.is_finite()) => {
                Err(InvalidGrid("escape radius must be >= 1"))
            }
            _ => Ok(()),
        }
    }
}

/// Scan-wide parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanParams {
    pub escape_radius: EscapeRadius,
    pub max_iter: u32,
    /// Worker threads; 0 means whatever the global pool provides. Ignored
    /// without the `parallel` feature.
    pub workers: usize,
}

impl ScanParams {
    pub fn new(escape_radius: EscapeRadius, max_iter: u32) -> Self {
        Self {
            escape_radius,
            max_iter,
            workers: 0,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

/// Discretized membership of a parameter-plane set: one orbit status per
/// pixel, plus the run parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipMap {
    pub grid: GridSpec,
    pub cells: Vec<OrbitStatus>,
    pub recurrence: Recurrence,
    pub escape_radius: EscapeRadius,
    pub max_iter: u32,
}

impl MembershipMap {
    pub fn status(&self, i: u32, j: u32) -> OrbitStatus {
        self.cells[j as usize * self.grid.width as usize + i as usize]
    }

    pub fn bounded_count(&self) -> usize {
        self.cells.iter().filter(|s| s.is_bounded()).count()
    }

    pub fn bounded_fraction(&self) -> f64 {
        self.bounded_count() as f64 / self.cells.len() as f64
    }
}

fn scan_row(
    grid: &GridSpec,
    spec: &Recurrence,
    params: &ScanParams,
    j: u32,
    row: &mut [OrbitStatus],
) {
    for (i, cell) in row.iter_mut().enumerate() {
        let c = grid.pixel_center(i as u32, j);
        let radius = params.escape_radius.effective(c);
        *cell = classify_orbit(c, spec, radius, params.max_iter, false).status;
    }
}

/// Sequential reference scan, always available.
pub fn scan_grid_sequential(
    grid: &GridSpec,
    spec: &Recurrence,
    params: &ScanParams,
) -> MembershipMap {
    let mut cells = vec![OrbitStatus::Bounded; grid.pixel_count()];
    for (j, row) in cells.chunks_mut(grid.width as usize).enumerate() {
        scan_row(grid, spec, params, j as u32, row);
    }
    MembershipMap {
        grid: *grid,
        cells,
        recurrence: spec.clone(),
        escape_radius: params.escape_radius,
        max_iter: params.max_iter,
    }
}

/// One orbit classification per pixel center. Output is independent of
/// evaluation order and worker count.
#[cfg(feature = "parallel")]
pub fn scan_grid(grid: &GridSpec, spec: &Recurrence, params: &ScanParams) -> MembershipMap {
    use rayon::prelude::*;

    let run = |cells: &mut Vec<OrbitStatus>| {
        cells
            .par_chunks_mut(grid.width as usize)
            .enumerate()
            .for_each(|(j, row)| scan_row(grid, spec, params, j as u32, row));
    };

    let mut cells = vec![OrbitStatus::Bounded; grid.pixel_count()];
    if params.workers == 0 {
        run(&mut cells);
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(params.workers)
            .build()
            .expect("thread pool");
        pool.install(|| run(&mut cells));
    }
    MembershipMap {
        grid: *grid,
        cells,
        recurrence: spec.clone(),
        escape_radius: params.escape_radius,
        max_iter: params.max_iter,
    }
}

/// Sequential fallback used when the `parallel` feature is disabled; the
/// worker count is accepted and ignored.
#[cfg(not(feature = "parallel"))]
pub fn scan_grid(grid: &GridSpec, spec: &Recurrence, params: &ScanParams) -> MembershipMap {
    scan_grid_sequential(grid, spec, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(0.0, 0.0, -1.0, 1.0, 4, 4).is_err());
        assert!(GridSpec::new(-1.0, 1.0, -1.0, 1.0, 0, 4).is_err());
        assert!(GridSpec::new(-1.0, 1.0, -1.0, 1.0, 4, 4).is_ok());
    }

    #[test]
    fn pixel_centers_cover_the_window() {
        let g = GridSpec::new(-2.0, 2.0, -1.0, 1.0, 4, 2).unwrap();
        let c00 = g.pixel_center(0, 0);
        assert!((c00.re - (-1.5)).abs() < 1e-15);
        assert!((c00.im - 0.5).abs() < 1e-15);
        let c31 = g.pixel_center(3, 1);
        assert!((c31.re - 1.5).abs() < 1e-15);
        assert!((c31.im - (-0.5)).abs() < 1e-15);
    }

    #[test]
    fn symmetric_window_samples_exact_conjugates() {
        let g = GridSpec::default_window(64, 64);
        for j in 0..32 {
            for i in [0u32, 17, 63] {
                let top = g.pixel_center(i, j);
                let bottom = g.pixel_center(i, 63 - j);
                assert_eq!(top.re.to_bits(), bottom.re.to_bits());
                assert_eq!(top.im.to_bits(), (-bottom.im).to_bits());
            }
        }
    }

    #[test]
    fn sequential_and_parallel_scans_agree_exactly() {
        let g = GridSpec::default_window(48, 48);
        let spec = Recurrence::PlainPower { d: 2 };
        let params = ScanParams::new(EscapeRadius::Fixed(2.0), 64);
        let seq = scan_grid_sequential(&g, &spec, &params);
        for workers in [1usize, 4, 8] {
            let par = scan_grid(&g, &spec, &params.with_workers(workers));
            assert_eq!(seq.cells, par.cells, "workers = {workers}");
        }
    }

    #[test]
    fn mandelbrot_bounded_fraction_is_plausible() {
        let g = GridSpec::default_window(64, 64);
        let spec = Recurrence::PlainPower { d: 2 };
        let params = ScanParams::new(EscapeRadius::Fixed(2.0), 100);
        let map = scan_grid(&g, &spec, &params);
        let f = map.bounded_fraction();
        assert!(f > 0.05 && f < 0.25, "fraction = {f}");
    }

    #[test]
    fn power_auto_radius() {
        let r = EscapeRadius::PowerAuto;
        assert_eq!(r.effective(Complex::new(0.0, 0.0)), 3.0);
        assert_eq!(r.effective(Complex::new(5.0, 0.0)), 6.0);
        assert_eq!(
            EscapeRadius::default_for(&Recurrence::PlainPower { d: 3 }),
            EscapeRadius::PowerAuto
        );
        assert_eq!(
            EscapeRadius::default_for(&Recurrence::Mm1 {
                p: 1,
                m: 1.0,
                root_branch: 0
            }),
            EscapeRadius::Fixed(4.0)
        );
    }
}
