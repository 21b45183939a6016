//! Planned forward/inverse FFT for any length.
//!
//! Lengths whose prime factors are all at most [`MAX_GENERIC_RADIX`] run as a
//! self-sorting (Stockham) mixed-radix transform with dedicated butterflies for
//! radices 2, 3, 4 and 5. Any other length is evaluated as a chirp-z
//! convolution (Bluestein) on a power-of-two inner transform.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Largest prime handled by the generic O(p) butterfly before switching the
/// whole transform to Bluestein.
pub const MAX_GENERIC_RADIX: usize = 31;

/// A reusable transform plan for one length.
///
/// Plans are immutable and `Sync`; callers supply their own scratch buffer of
/// [`FftPlan::scratch_len`] elements so one plan can serve many threads.
#[derive(Debug, Clone)]
pub struct FftPlan {
    len: usize,
    kind: PlanKind,
}

#[derive(Debug, Clone)]
enum PlanKind {
    MixedRadix(MixedRadix),
    Bluestein(Box<Bluestein>),
}

impl FftPlan {
    pub fn new(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidArgument("transform length must be at least 1".into()));
        }
        let kind = match MixedRadix::new(len) {
            Some(plan) => PlanKind::MixedRadix(plan),
            None => PlanKind::Bluestein(Box::new(Bluestein::new(len))),
        };
        Ok(Self { len, kind })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Whether this plan falls back to the chirp-z algorithm.
    pub fn is_bluestein(&self) -> bool {
        matches!(self.kind, PlanKind::Bluestein(_))
    }

    pub fn scratch_len(&self) -> usize {
        match &self.kind {
            PlanKind::MixedRadix(_) => self.len,
            PlanKind::Bluestein(b) => 2 * b.inner.len,
        }
    }

    /// Unnormalized forward transform, `X_k = sum_n x_n exp(-2 pi i k n / N)`, in place.
    pub fn forward(&self, buffer: &mut [Complex64], scratch: &mut [Complex64]) {
        assert_eq!(buffer.len(), self.len, "buffer length does not match plan");
        assert!(scratch.len() >= self.scratch_len(), "scratch buffer too short");
        match &self.kind {
            PlanKind::MixedRadix(plan) => plan.forward(buffer, &mut scratch[..self.len]),
            PlanKind::Bluestein(plan) => plan.forward(buffer, scratch),
        }
    }

    /// Inverse transform with the `1/N` factor, in place.
    pub fn inverse(&self, buffer: &mut [Complex64], scratch: &mut [Complex64]) {
        for c in buffer.iter_mut() {
            *c = c.conj();
        }
        self.forward(buffer, scratch);
        let scale = 1.0 / self.len as f64;
        for c in buffer.iter_mut() {
            *c = c.conj() * scale;
        }
    }
}

fn factorize(mut n: usize) -> Vec<usize> {
    let mut factors = Vec::new();
    while n % 4 == 0 {
        factors.push(4);
        n /= 4;
    }
    let mut p = 2;
    while n > 1 {
        if p * p > n {
            factors.push(n);
            break;
        }
        while n % p == 0 {
            factors.push(p);
            n /= p;
        }
        p += 1;
    }
    factors
}

#[derive(Debug, Clone)]
struct Stage {
    radix: usize,
    /// Product of the radices of all earlier stages.
    span: usize,
    /// `twiddles[k * radix + t] = exp(-2 pi i t k / (span * radix))` for `k < span`.
    twiddles: Vec<Complex64>,
    /// `roots[m] = exp(-2 pi i m / radix)`, only filled for the generic butterfly.
    roots: Vec<Complex64>,
}

#[derive(Debug, Clone)]
struct MixedRadix {
    len: usize,
    stages: Vec<Stage>,
}

impl MixedRadix {
    fn new(len: usize) -> Option<Self> {
        let factors = factorize(len);
        if factors.iter().any(|&f| f > MAX_GENERIC_RADIX) {
            return None;
        }
        let mut span = 1;
        let mut stages = Vec::with_capacity(factors.len());
        for radix in factors {
            let size = span * radix;
            let mut twiddles = Vec::with_capacity(size);
            for k in 0..span {
                for t in 0..radix {
                    twiddles.push(unit_root(t * k, size));
                }
            }
            let roots = if matches!(radix, 2 | 3 | 4 | 5) {
                Vec::new()
            } else {
                (0..radix).map(|m| unit_root(m, radix)).collect()
            };
            stages.push(Stage { radix, span, twiddles, roots });
            span = size;
        }
        Some(Self { len, stages })
    }

    fn forward(&self, buffer: &mut [Complex64], scratch: &mut [Complex64]) {
        let mut in_buffer = true;
        for stage in &self.stages {
            if in_buffer {
                run_stage(stage, self.len, buffer, scratch);
            } else {
                run_stage(stage, self.len, scratch, buffer);
            }
            in_buffer = !in_buffer;
        }
        if !in_buffer {
            buffer.copy_from_slice(scratch);
        }
    }
}

/// `exp(-2 pi i num / den)`, with `num` reduced first so large products stay accurate.
fn unit_root(num: usize, den: usize) -> Complex64 {
    let angle = -2.0 * PI * (num % den) as f64 / den as f64;
    Complex64::new(angle.cos(), angle.sin())
}

#[inline(always)]
fn mul_neg_i(c: Complex64) -> Complex64 {
    Complex64::new(c.im, -c.re)
}

fn run_stage(stage: &Stage, len: usize, src: &[Complex64], dst: &mut [Complex64]) {
    let radix = stage.radix;
    let span = stage.span;
    let stride = len / radix;
    let blocks = stride / span;
    match radix {
        2 => {
            for block in 0..blocks {
                for k in 0..span {
                    let j = block * span + k;
                    let tw = &stage.twiddles[k * 2..k * 2 + 2];
                    let a = src[j];
                    let b = src[j + stride] * tw[1];
                    let out = block * span * 2 + k;
                    dst[out] = a + b;
                    dst[out + span] = a - b;
                }
            }
        }
        3 => {
            let (c, s) = (-0.5, -(3f64.sqrt()) / 2.0);
            for block in 0..blocks {
                for k in 0..span {
                    let j = block * span + k;
                    let tw = &stage.twiddles[k * 3..k * 3 + 3];
                    let v0 = src[j];
                    let v1 = src[j + stride] * tw[1];
                    let v2 = src[j + 2 * stride] * tw[2];
                    let sum = v1 + v2;
                    let diff = v1 - v2;
                    let mid = v0 + sum * c;
                    let rot = Complex64::new(-diff.im * s, diff.re * s);
                    let out = block * span * 3 + k;
                    dst[out] = v0 + sum;
                    dst[out + span] = mid + rot;
                    dst[out + 2 * span] = mid - rot;
                }
            }
        }
        4 => {
            for block in 0..blocks {
                for k in 0..span {
                    let j = block * span + k;
                    let tw = &stage.twiddles[k * 4..k * 4 + 4];
                    let v0 = src[j];
                    let v1 = src[j + stride] * tw[1];
                    let v2 = src[j + 2 * stride] * tw[2];
                    let v3 = src[j + 3 * stride] * tw[3];
                    let s02 = v0 + v2;
                    let d02 = v0 - v2;
                    let s13 = v1 + v3;
                    let d13 = mul_neg_i(v1 - v3);
                    let out = block * span * 4 + k;
                    dst[out] = s02 + s13;
                    dst[out + span] = d02 + d13;
                    dst[out + 2 * span] = s02 - s13;
                    dst[out + 3 * span] = d02 - d13;
                }
            }
        }
        5 => {
            let c1 = (2.0 * PI / 5.0).cos();
            let c2 = (4.0 * PI / 5.0).cos();
            let s1 = (2.0 * PI / 5.0).sin();
            let s2 = (4.0 * PI / 5.0).sin();
            for block in 0..blocks {
                for k in 0..span {
                    let j = block * span + k;
                    let tw = &stage.twiddles[k * 5..k * 5 + 5];
                    let v0 = src[j];
                    let v1 = src[j + stride] * tw[1];
                    let v2 = src[j + 2 * stride] * tw[2];
                    let v3 = src[j + 3 * stride] * tw[3];
                    let v4 = src[j + 4 * stride] * tw[4];
                    let a1 = v1 + v4;
                    let b1 = v1 - v4;
                    let a2 = v2 + v3;
                    let b2 = v2 - v3;
                    let m1 = v0 + a1 * c1 + a2 * c2;
                    let m2 = v0 + a1 * c2 + a2 * c1;
                    let r1 = mul_neg_i(b1 * s1 + b2 * s2);
                    let r2 = mul_neg_i(b1 * s2 - b2 * s1);
                    let out = block * span * 5 + k;
                    dst[out] = v0 + a1 + a2;
                    dst[out + span] = m1 + r1;
                    dst[out + 2 * span] = m2 + r2;
                    dst[out + 3 * span] = m2 - r2;
                    dst[out + 4 * span] = m1 - r1;
                }
            }
        }
        _ => {
            let mut v = vec![Complex64::new(0.0, 0.0); radix];
            for block in 0..blocks {
                for k in 0..span {
                    let j = block * span + k;
                    let tw = &stage.twiddles[k * radix..(k + 1) * radix];
                    for (t, slot) in v.iter_mut().enumerate() {
                        *slot = src[j + t * stride] * tw[t];
                    }
                    let out = block * span * radix + k;
                    for t in 0..radix {
                        let mut acc = v[0];
                        let mut idx = 0;
                        for item in &v[1..] {
                            idx += t;
                            if idx >= radix {
                                idx -= radix;
                            }
                            acc += item * stage.roots[idx];
                        }
                        dst[out + t * span] = acc;
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
struct Bluestein {
    len: usize,
    inner: MixedRadix,
    /// `exp(-i pi k^2 / N)` for `k < N`.
    chirp: Vec<Complex64>,
    /// Forward transform of the conjugate chirp, wrapped to the inner length
    /// and pre-scaled by `1/M` for the inner inverse.
    kernel: Vec<Complex64>,
}

impl Bluestein {
    fn new(len: usize) -> Self {
        let inner_len = (2 * len - 1).next_power_of_two();
        let inner = MixedRadix::new(inner_len).expect("powers of two always factor");
        let two_n = 2 * len as u128;
        let chirp: Vec<Complex64> = (0..len)
            .map(|k| {
                let k = k as u128;
                let reduced = (k * k) % two_n;
                let angle = -PI * reduced as f64 / len as f64;
                Complex64::new(angle.cos(), angle.sin())
            })
            .collect();

        let zero = Complex64::new(0.0, 0.0);
        let mut kernel = vec![zero; inner_len];
        kernel[0] = chirp[0].conj();
        for k in 1..len {
            kernel[k] = chirp[k].conj();
            kernel[inner_len - k] = chirp[k].conj();
        }
        let mut scratch = vec![zero; inner_len];
        inner.forward(&mut kernel, &mut scratch);
        let scale = 1.0 / inner_len as f64;
        for c in kernel.iter_mut() {
            *c *= scale;
        }
        Self { len, inner, chirp, kernel }
    }

    fn forward(&self, buffer: &mut [Complex64], scratch: &mut [Complex64]) {
        let m = self.inner.len;
        let (work, inner_scratch) = scratch[..2 * m].split_at_mut(m);
        for (w, (x, c)) in work.iter_mut().zip(buffer.iter().zip(&self.chirp)) {
            *w = x * c;
        }
        for w in &mut work[self.len..] {
            *w = Complex64::new(0.0, 0.0);
        }
        self.inner.forward(work, inner_scratch);
        // Multiply by the kernel and conjugate so the next forward pass acts as an inverse.
        for (w, k) in work.iter_mut().zip(&self.kernel) {
            *w = (*w * k).conj();
        }
        self.inner.forward(work, inner_scratch);
        for (x, (w, c)) in buffer.iter_mut().zip(work.iter().zip(&self.chirp)) {
            *x = w.conj() * c;
        }
    }
}
