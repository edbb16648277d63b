//! C ABI for `torsep`.
//!
//! Objects are opaque heap handles released with the matching `*_free`.
//! Every fallible call returns a [`TorsepStatus`]; on failure the message is
//! available from [`torsep_last_error`] on the same thread. Panics never
//! cross the boundary.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use torsep::segre_veronese::{monomial_min_size, separating_size_bounds, SvSpec};
use torsep::septest::{check_separating, construct_2rplus1, small_support_generators, Characteristic};
use torsep::{Error, ExponentVector, MonomialSemigroup, TorusRep};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsepStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    ResourceCap = 3,
    Overflow = 4,
    BufferTooSmall = 5,
    Internal = 6,
}

/// A torus representation given by its weight matrix.
pub struct TorsepRep(TorusRep);

/// A finitely generated monomial semigroup.
pub struct TorsepSemigroup(MonomialSemigroup);

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TorsepSvBounds {
    pub case_: u8,
    pub s_lower: i64,
    pub s_upper: i64,
    pub s_prime_lower: i64,
    pub s_prime_upper: i64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TorsepStatus {
    match e {
        e if e.is_resource_cap() => TorsepStatus::ResourceCap,
        Error::Overflow => TorsepStatus::Overflow,
        Error::InvariantViolation(_) => TorsepStatus::Internal,
        _ => TorsepStatus::InvalidInput,
    }
}

enum Fail {
    Null(&'static str),
    Small(usize),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TorsepStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            TorsepStatus::Ok
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            TorsepStatus::NullPointer
        }
        Ok(Err(Fail::Small(need))) => {
            set_error(format!("buffer too small: {need} entries needed"));
            TorsepStatus::BufferTooSmall
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            TorsepStatus::Internal
        }
    }
}

unsafe fn nonnull<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn array<'a, T>(p: *const T, len: usize, what: &'static str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    Ok(slice::from_raw_parts(p, len))
}

fn checked_len(a: usize, b: usize) -> Result<usize, Fail> {
    a.checked_mul(b).ok_or(Fail::Lib(Error::Overflow))
}

/// Message for the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn torsep_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn torsep_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version has no interior nul"),
    };
    VERSION.as_ptr()
}

/// Builds a representation from `n` weight columns of length `rank`, stored
/// column after column in `weights`.
#[no_mangle]
pub unsafe extern "C" fn torsep_rep_new(
    weights: *const i64,
    rank: usize,
    n: usize,
    out_rep: *mut *mut TorsepRep,
) -> TorsepStatus {
    guard(|| {
        let slot = out(out_rep, "out_rep")?;
        *slot = ptr::null_mut();
        let flat = array(weights, checked_len(rank, n)?, "weights")?;
        if rank == 0 || n == 0 {
            return Err(Error::InvalidInput("rank and n must be positive".into()).into());
        }
        let columns: Vec<Vec<i64>> = flat.chunks(rank).map(<[i64]>::to_vec).collect();
        let rep = TorusRep::from_weights(&columns)?;
        *slot = Box::into_raw(Box::new(TorsepRep(rep)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn torsep_rep_free(rep: *mut TorsepRep) {
    if !rep.is_null() {
        drop(Box::from_raw(rep));
    }
}

/// Rank `r`, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn torsep_rep_rank(rep: *const TorsepRep) -> usize {
    rep.as_ref().map_or(0, |r| r.0.rank())
}

/// Number of coordinates `n`, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn torsep_rep_dim(rep: *const TorsepRep) -> usize {
    rep.as_ref().map_or(0, |r| r.0.dim())
}

/// Hilbert basis of the invariant semigroup as a new semigroup handle.
#[no_mangle]
pub unsafe extern "C" fn torsep_hilbert_basis(rep: *const TorsepRep, out_s: *mut *mut TorsepSemigroup) -> TorsepStatus {
    guard(|| {
        let slot = out(out_s, "out_s")?;
        *slot = ptr::null_mut();
        let rep = &nonnull(rep, "rep")?.0;
        let s = rep.hilbert_basis()?.to_semigroup();
        *slot = Box::into_raw(Box::new(TorsepSemigroup(s)));
        Ok(())
    })
}

/// Semigroup generated by `count` exponent vectors of length `n`, stored one
/// after another in `gens`.
#[no_mangle]
pub unsafe extern "C" fn torsep_semigroup_new(
    gens: *const u64,
    count: usize,
    n: usize,
    out_s: *mut *mut TorsepSemigroup,
) -> TorsepStatus {
    guard(|| {
        let slot = out(out_s, "out_s")?;
        *slot = ptr::null_mut();
        let flat = array(gens, checked_len(count, n)?, "gens")?;
        if n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()).into());
        }
        let vectors = flat.chunks(n).map(|c| ExponentVector::new(c.to_vec())).collect();
        *slot = Box::into_raw(Box::new(TorsepSemigroup(MonomialSemigroup::new(n, vectors)?)));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn torsep_semigroup_free(s: *mut TorsepSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of generators, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn torsep_semigroup_len(s: *const TorsepSemigroup) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// Length of each generator, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn torsep_semigroup_dim(s: *const TorsepSemigroup) -> usize {
    s.as_ref().map_or(0, |s| s.0.dim())
}

/// Copies the generators row after row into `buf`, which must hold
/// `len * n` entries.
#[no_mangle]
pub unsafe extern "C" fn torsep_semigroup_copy(s: *const TorsepSemigroup, buf: *mut u64, buf_len: usize) -> TorsepStatus {
    guard(|| {
        let s = &nonnull(s, "s")?.0;
        let need = checked_len(s.len(), s.dim())?;
        if buf_len < need {
            return Err(Fail::Small(need));
        }
        if need == 0 {
            return Ok(());
        }
        if buf.is_null() {
            return Err(Fail::Null("buf"));
        }
        let dst = slice::from_raw_parts_mut(buf, need);
        for (row, g) in dst.chunks_mut(s.dim()).zip(s.generators()) {
            row.copy_from_slice(g.entries());
        }
        Ok(())
    })
}

/// Hilbert basis elements supported on at most `bound` coordinates.
#[no_mangle]
pub unsafe extern "C" fn torsep_small_support_generators(
    rep: *const TorsepRep,
    bound: usize,
    out_s: *mut *mut TorsepSemigroup,
) -> TorsepStatus {
    guard(|| {
        let slot = out(out_s, "out_s")?;
        *slot = ptr::null_mut();
        let s = small_support_generators(&nonnull(rep, "rep")?.0, bound)?;
        *slot = Box::into_raw(Box::new(TorsepSemigroup(s)));
        Ok(())
    })
}

/// The separating set of invariant monomials on at most `2r + 1` coordinates.
#[no_mangle]
pub unsafe extern "C" fn torsep_construct_2rplus1(rep: *const TorsepRep, out_s: *mut *mut TorsepSemigroup) -> TorsepStatus {
    guard(|| {
        let slot = out(out_s, "out_s")?;
        *slot = ptr::null_mut();
        let s = construct_2rplus1(&nonnull(rep, "rep")?.0)?;
        *slot = Box::into_raw(Box::new(TorsepSemigroup(s)));
        Ok(())
    })
}

/// Whether `s` generates a separating subalgebra in characteristic
/// `characteristic` (0 or a prime). In characteristic `p` a `false` means no
/// `m` up to the representation's cap was found.
#[no_mangle]
pub unsafe extern "C" fn torsep_check_separating(
    rep: *const TorsepRep,
    s: *const TorsepSemigroup,
    characteristic: u64,
    out_separating: *mut bool,
) -> TorsepStatus {
    guard(|| {
        let slot = out(out_separating, "out_separating")?;
        let c = Characteristic::from_u64(characteristic)?;
        *slot = check_separating(&nonnull(rep, "rep")?.0, &nonnull(s, "s")?.0, c)?;
        Ok(())
    })
}

unsafe fn sv_spec(n: *const u64, a: *const u64, r: usize, characteristic: u64) -> Result<SvSpec, Fail> {
    let n = array(n, r, "n")?.to_vec();
    let a = array(a, r, "a")?.to_vec();
    Ok(SvSpec::new(n, a, Characteristic::from_u64(characteristic)?)?)
}

/// Bounds on the separating-set size of the Segre-Veronese cone with factor
/// sizes `n` and degrees `a`, both of length `r`.
#[no_mangle]
pub unsafe extern "C" fn torsep_sv_bounds(
    n: *const u64,
    a: *const u64,
    r: usize,
    characteristic: u64,
    out_bounds: *mut TorsepSvBounds,
) -> TorsepStatus {
    guard(|| {
        let slot = out(out_bounds, "out_bounds")?;
        let b = separating_size_bounds(&sv_spec(n, a, r, characteristic)?);
        *slot = TorsepSvBounds {
            case_: b.case,
            s_lower: b.s_lower,
            s_upper: b.s_upper,
            s_prime_lower: b.s_prime_lower,
            s_prime_upper: b.s_prime_upper,
        };
        Ok(())
    })
}

/// Size of a minimal monomial separating set of the Segre-Veronese cone.
#[no_mangle]
pub unsafe extern "C" fn torsep_sv_monomial_min_size(
    n: *const u64,
    a: *const u64,
    r: usize,
    characteristic: u64,
    out_size: *mut u64,
) -> TorsepStatus {
    guard(|| {
        let slot = out(out_size, "out_size")?;
        let size = monomial_min_size(&sv_spec(n, a, r, characteristic)?);
        *slot = u64::try_from(size).map_err(|_| Error::Overflow)?;
        Ok(())
    })
}
