//! C ABI for the Sierpinski gasket spanning-tree library.
//!
//! Everything crosses the boundary as UTF-8 strings (exact fractions do not
//! fit machine words) or as opaque handles. Every function returns an
//! [`SgStatus`]; out-pointers are written only on `SG_STATUS_OK`.
//!
//! # Safety
//!
//! All `extern "C"` functions follow the same contract: pointer arguments
//! must be valid for the duration of the call, strings must be
//! NUL-terminated UTF-8, and every `char*` produced here must be released
//! with [`sg_string_free`] (handles with [`sg_table_free`]). Null pointers
//! are rejected with `SG_STATUS_NULL_POINTER` rather than dereferenced.

use std::ffi::{c_char, CStr, CString};

use sg_core::gasket::{parse_address, resolve_address, Coord, VertexAddress};
use sg_core::ratmat::{decimal_string, fraction_string, Rat};
use sg_core::vertexdist::{full_table, vertex_distribution};
use sg_core::{aggregate, counts, Error};

/// Result code of every FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    StageBound = 3,
    ParseError = 4,
    Internal = 5,
}

fn status_of(err: &Error) -> SgStatus {
    match err {
        Error::StageBound { .. } | Error::OracleBound { .. } => SgStatus::StageBound,
        Error::AddressParse(_) | Error::AddressInvalid { .. } => SgStatus::ParseError,
        Error::NotAVertex(_) => SgStatus::InvalidArgument,
        _ => SgStatus::Internal,
    }
}

/// Exact per-vertex degree table of one gasket stage (opaque).
pub struct SgTable {
    n: u32,
    rows: Vec<(VertexAddress, Coord, [Rat; 4])>,
}

fn write_string(out: *mut *mut c_char, s: String) -> SgStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            SgStatus::Ok
        }
        Err(_) => SgStatus::Internal,
    }
}

/// Library version as a heap string; free with [`sg_string_free`].
#[no_mangle]
pub extern "C" fn sg_version() -> *mut c_char {
    CString::new(env!("CARGO_PKG_VERSION"))
        .map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Release a string produced by this library.
///
/// # Safety
/// `s` must come from this library and must not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn sg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Spanning-tree and forest counts of `SG(n)` as a JSON object
/// `{"n":..,"f":..,"g":..,"h":..,"f_factored":{..}}`.
///
/// # Safety
/// `out_json` must be a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_counts_json(n: u32, out_json: *mut *mut c_char) -> SgStatus {
    if out_json.is_null() {
        return SgStatus::NullPointer;
    }
    let triple = match counts::fgh(n) {
        Ok(t) => t,
        Err(e) => return status_of(&e),
    };
    let (alpha, beta, gamma) = match counts::f_factored(n) {
        Ok(t) => t,
        Err(e) => return status_of(&e),
    };
    let json = format!(
        "{{\"n\":{n},\"f\":\"{}\",\"g\":\"{}\",\"h\":\"{}\",\"f_factored\":{{\"alpha\":{alpha},\"beta\":{beta},\"gamma\":{gamma}}}}}",
        triple.f, triple.g, triple.h
    );
    write_string(out_json, json)
}

/// Degree distribution at one address of `SG(n)` as a JSON object with
/// fraction strings.
///
/// # Safety
/// `address` must be a NUL-terminated UTF-8 string; `out_json` a valid
/// out-pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_vertex_json(
    n: u32,
    address: *const c_char,
    out_json: *mut *mut c_char,
) -> SgStatus {
    if address.is_null() || out_json.is_null() {
        return SgStatus::NullPointer;
    }
    let text = match unsafe { CStr::from_ptr(address) }.to_str() {
        Ok(t) => t,
        Err(_) => return SgStatus::ParseError,
    };
    let addr = match parse_address(text) {
        Ok(a) => a,
        Err(e) => return status_of(&e),
    };
    let dist = match vertex_distribution(n, &addr) {
        Ok(d) => d,
        Err(e) => return status_of(&e),
    };
    let coord = match resolve_address(&addr, n) {
        Ok(c) => c,
        Err(e) => return status_of(&e),
    };
    let fracs: Vec<String> =
        dist.iter().map(|v| format!("\"{}\"", fraction_string(v))).collect();
    let json = format!(
        "{{\"n\":{n},\"address\":\"{}\",\"p\":{},\"q\":{},\"F\":[{}]}}",
        addr,
        coord.p,
        coord.q,
        fracs.join(",")
    );
    write_string(out_json, json)
}

/// Limiting degree distribution as a JSON array of four fraction strings.
///
/// # Safety
/// `out_json` must be a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_phi_limit_json(out_json: *mut *mut c_char) -> SgStatus {
    if out_json.is_null() {
        return SgStatus::NullPointer;
    }
    let fracs: Vec<String> = aggregate::phi_limit_values()
        .iter()
        .map(|v| format!("\"{}\"", fraction_string(v)))
        .collect();
    write_string(out_json, format!("[{}]", fracs.join(",")))
}

/// Per-stage averages `phi_j(n)` as a JSON array of four fraction strings.
///
/// # Safety
/// `out_json` must be a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_phi_json(n: u32, out_json: *mut *mut c_char) -> SgStatus {
    if out_json.is_null() {
        return SgStatus::NullPointer;
    }
    let mut fracs = Vec::with_capacity(4);
    for j in 1..=4 {
        match aggregate::phi_sum(n, j) {
            Ok(r) => fracs.push(format!("\"{}\"", fraction_string(&r.average))),
            Err(e) => return status_of(&e),
        }
    }
    write_string(out_json, format!("[{}]", fracs.join(",")))
}

/// Build the full exact degree table of `SG(n)`.
///
/// # Safety
/// `out_table` must be a valid out-pointer; release the handle with
/// [`sg_table_free`].
#[no_mangle]
pub unsafe extern "C" fn sg_table_new(n: u32, out_table: *mut *mut SgTable) -> SgStatus {
    if out_table.is_null() {
        return SgStatus::NullPointer;
    }
    let table = match full_table(n) {
        Ok(t) => t,
        Err(e) => return status_of(&e),
    };
    let mut rows: Vec<(VertexAddress, Coord, [Rat; 4])> = table
        .into_iter()
        .map(|(addr, dist)| {
            let coord = resolve_address(&addr, n).expect("enumerated address resolves");
            (addr, coord, dist)
        })
        .collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    unsafe { *out_table = Box::into_raw(Box::new(SgTable { n, rows })) };
    SgStatus::Ok
}

/// Release a table handle.
///
/// # Safety
/// `table` must come from [`sg_table_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn sg_table_free(table: *mut SgTable) {
    if !table.is_null() {
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Number of rows (vertices) in the table; 0 for a null handle.
///
/// # Safety
/// `table` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sg_table_len(table: *const SgTable) -> usize {
    if table.is_null() {
        0
    } else {
        unsafe { &*table }.rows.len()
    }
}

/// Stage of the table; `u32::MAX` for a null handle.
///
/// # Safety
/// `table` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn sg_table_stage(table: *const SgTable) -> u32 {
    if table.is_null() {
        u32::MAX
    } else {
        unsafe { &*table }.n
    }
}

/// Canonical address of one row.
///
/// # Safety
/// `table` must be a live handle; `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_table_address(
    table: *const SgTable,
    row: usize,
    out: *mut *mut c_char,
) -> SgStatus {
    if table.is_null() || out.is_null() {
        return SgStatus::NullPointer;
    }
    let t = unsafe { &*table };
    match t.rows.get(row) {
        Some((addr, _, _)) => write_string(out, addr.to_string()),
        None => SgStatus::InvalidArgument,
    }
}

/// Lattice coordinates of one row.
///
/// # Safety
/// `table` must be a live handle; `out_p`, `out_q` valid out-pointers.
#[no_mangle]
pub unsafe extern "C" fn sg_table_coord(
    table: *const SgTable,
    row: usize,
    out_p: *mut i64,
    out_q: *mut i64,
) -> SgStatus {
    if table.is_null() || out_p.is_null() || out_q.is_null() {
        return SgStatus::NullPointer;
    }
    let t = unsafe { &*table };
    match t.rows.get(row) {
        Some((_, coord, _)) => {
            unsafe {
                *out_p = coord.p;
                *out_q = coord.q;
            }
            SgStatus::Ok
        }
        None => SgStatus::InvalidArgument,
    }
}

/// Exact probability that the row's vertex has the given degree (1..=4),
/// as a fraction string `"num/den"`.
///
/// # Safety
/// `table` must be a live handle; `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_table_fraction(
    table: *const SgTable,
    row: usize,
    degree: u32,
    out: *mut *mut c_char,
) -> SgStatus {
    if table.is_null() || out.is_null() {
        return SgStatus::NullPointer;
    }
    if !(1..=4).contains(&degree) {
        return SgStatus::InvalidArgument;
    }
    let t = unsafe { &*table };
    match t.rows.get(row) {
        Some((_, _, dist)) => write_string(out, fraction_string(&dist[degree as usize - 1])),
        None => SgStatus::InvalidArgument,
    }
}

/// Same probability as a rounded decimal with `digits` significant digits.
///
/// # Safety
/// `table` must be a live handle; `out` a valid out-pointer.
#[no_mangle]
pub unsafe extern "C" fn sg_table_decimal(
    table: *const SgTable,
    row: usize,
    degree: u32,
    digits: u32,
    out: *mut *mut c_char,
) -> SgStatus {
    if table.is_null() || out.is_null() {
        return SgStatus::NullPointer;
    }
    if !(1..=4).contains(&degree) || digits == 0 {
        return SgStatus::InvalidArgument;
    }
    let t = unsafe { &*table };
    match t.rows.get(row) {
        Some((_, _, dist)) => {
            write_string(out, decimal_string(&dist[degree as usize - 1], digits as usize))
        }
        None => SgStatus::InvalidArgument,
    }
}
