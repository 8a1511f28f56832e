//! Unitary multi-dimensional DFT built from one-dimensional `rustfft` passes.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use super::grid::Grid;

thread_local! {
    // One planner per thread: plans are reused without cross-thread locking.
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft(len, direction))
}

fn transform_axes(dims: &[usize], data: &mut [Complex64], direction: FftDirection) {
    let total: usize = dims.iter().product();
    debug_assert_eq!(total, data.len());
    for (axis, &len) in dims.iter().enumerate() {
        let fft = plan(len, direction);
        let stride: usize = dims[axis + 1..].iter().product();
        let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        if stride == 1 {
            for line in data.chunks_exact_mut(len) {
                fft.process_with_scratch(line, &mut scratch);
            }
            continue;
        }
        let block = len * stride;
        let mut line = vec![Complex64::default(); len];
        for start in (0..total).step_by(block) {
            for offset in 0..stride {
                let base = start + offset;
                for (i, slot) in line.iter_mut().enumerate() {
                    *slot = data[base + i * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (i, v) in line.iter().enumerate() {
                    data[base + i * stride] = *v;
                }
            }
        }
    }
    let norm = 1.0 / (total as f64).sqrt();
    for v in data.iter_mut() {
        *v *= norm;
    }
}

/// In-place unitary forward transform over a rectangular array.
pub fn forward_dims(dims: &[usize], data: &mut [Complex64]) {
    transform_axes(dims, data, FftDirection::Forward);
}

/// In-place unitary inverse transform over a rectangular array.
pub fn inverse_dims(dims: &[usize], data: &mut [Complex64]) {
    transform_axes(dims, data, FftDirection::Inverse);
}

/// Unitary forward transform of grid samples.
pub fn forward(grid: &Grid, data: &mut [Complex64]) {
    let dims = vec![grid.points(); grid.dim()];
    forward_dims(&dims, data);
}

/// Unitary inverse transform of grid samples.
pub fn inverse(grid: &Grid, data: &mut [Complex64]) {
    let dims = vec![grid.points(); grid.dim()];
    inverse_dims(&dims, data);
}
