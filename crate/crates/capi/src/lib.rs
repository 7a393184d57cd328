//! C ABI over the wegner7 library: parse an embedded graph, color its square
//! with at most 7 colors, and verify colorings, through an opaque handle.
//!
//! Strings returned through `char **` out-parameters are allocated by Rust and
//! must be released with [`wegner7_string_free`]; graph handles with
//! [`wegner7_graph_free`].

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use wegner7::graph::PlanarGraph;
use wegner7::io;
use wegner7::solver::{self, PaletteColoring};

/// Opaque handle to an embedded graph (rotation system).
pub struct Wegner7Graph {
    inner: PlanarGraph,
}

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Wegner7Status {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// The input text did not parse as a rotation-system graph.
    ParseError = 2,
    /// The input graph violates a precondition (degree > 3) or the supplied
    /// coloring is not a proper total coloring of the square.
    InvalidInput = 3,
    /// The instance exceeded the configured size budget.
    BudgetExceeded = 4,
    /// An internal invariant failed; the result cannot be trusted.
    Internal = 5,
}

fn string_out(s: String, out: *mut *mut c_char) -> Wegner7Status {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            Wegner7Status::Ok
        }
        Err(_) => Wegner7Status::Internal,
    }
}

/// Parses rotation-system text (the `.rot` format: vertex count line, then
/// `v: n1 n2 ...` lines) into a graph handle stored in `*out`.
///
/// # Safety
/// `text` must point to a valid NUL-terminated string and `out` to a writable
/// `Wegner7Graph*` slot; both must stay valid for the duration of the call.
#[no_mangle]
pub unsafe extern "C" fn wegner7_graph_parse_rot(
    text: *const c_char,
    out: *mut *mut Wegner7Graph,
) -> Wegner7Status {
    if text.is_null() || out.is_null() {
        return Wegner7Status::NullArgument;
    }
    let Ok(text) = CStr::from_ptr(text).to_str() else {
        return Wegner7Status::ParseError;
    };
    match io::parse_rot(text) {
        Ok(g) => {
            *out = Box::into_raw(Box::new(Wegner7Graph { inner: g }));
            Wegner7Status::Ok
        }
        Err(_) => {
            *out = ptr::null_mut();
            Wegner7Status::ParseError
        }
    }
}

/// Releases a graph handle. Null is accepted and ignored.
///
/// # Safety
/// `g` must be null or a pointer previously returned through
/// [`wegner7_graph_parse_rot`] and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wegner7_graph_free(g: *mut Wegner7Graph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or -1 if `g` is null.
///
/// # Safety
/// `g` must be null or a live handle from [`wegner7_graph_parse_rot`].
#[no_mangle]
pub unsafe extern "C" fn wegner7_graph_vertex_count(g: *const Wegner7Graph) -> i64 {
    if g.is_null() {
        return -1;
    }
    (*g).inner.n() as i64
}

/// Number of edges, or -1 if `g` is null.
///
/// # Safety
/// `g` must be null or a live handle from [`wegner7_graph_parse_rot`].
#[no_mangle]
pub unsafe extern "C" fn wegner7_graph_edge_count(g: *const Wegner7Graph) -> i64 {
    if g.is_null() {
        return -1;
    }
    (*g).inner.edge_count() as i64
}

/// Colors the square of the graph with at most 7 colors and stores a JSON
/// report in `*out_json`: `{"n", "verified", "colors" (1-based per vertex),
/// "colors_used", "path"}`. The caller frees the string with
/// [`wegner7_string_free`].
///
/// # Safety
/// `g` must be a live handle from [`wegner7_graph_parse_rot`] and `out_json`
/// a writable `char**` slot.
#[no_mangle]
pub unsafe extern "C" fn wegner7_color_json(
    g: *const Wegner7Graph,
    out_json: *mut *mut c_char,
) -> Wegner7Status {
    if g.is_null() || out_json.is_null() {
        return Wegner7Status::NullArgument;
    }
    let graph = &(*g).inner;
    let out = match solver::seven_color(graph) {
        Ok(out) => out,
        Err(solver::PipelineError::InputViolation(_)) => return Wegner7Status::InvalidInput,
        Err(solver::PipelineError::TooLarge { .. }) => return Wegner7Status::BudgetExceeded,
        Err(solver::PipelineError::Internal(_)) => return Wegner7Status::Internal,
    };
    if !solver::verify_square_coloring(graph, &out.coloring) {
        return Wegner7Status::Internal;
    }
    let colors: Vec<u8> = (0..graph.n())
        .map(|v| out.coloring.get(v).expect("verified coloring is total"))
        .collect();
    let report = serde_json::json!({
        "n": graph.n(),
        "verified": true,
        "colors": colors,
        "colors_used": out.coloring.colors_used().len(),
        "path": out.path,
    });
    string_out(report.to_string(), out_json)
}

/// Checks that `colors` (one 1..=7 entry per vertex) is a proper coloring of
/// the graph's square. Returns `Ok` when it is, `InvalidInput` when it is not.
///
/// # Safety
/// `g` must be a live handle from [`wegner7_graph_parse_rot`] and `colors`
/// must point to at least `len` readable bytes.
#[no_mangle]
pub unsafe extern "C" fn wegner7_verify(
    g: *const Wegner7Graph,
    colors: *const u8,
    len: usize,
) -> Wegner7Status {
    if g.is_null() || colors.is_null() {
        return Wegner7Status::NullArgument;
    }
    let graph = &(*g).inner;
    if len != graph.n() {
        return Wegner7Status::InvalidInput;
    }
    let colors = std::slice::from_raw_parts(colors, len);
    if colors.iter().any(|&c| !(1..=7).contains(&c)) {
        return Wegner7Status::InvalidInput;
    }
    let mut pal = PaletteColoring::empty(graph.n());
    for (v, &c) in colors.iter().enumerate() {
        pal.set(v, c);
    }
    if solver::verify_square_coloring(graph, &pal) {
        Wegner7Status::Ok
    } else {
        Wegner7Status::InvalidInput
    }
}

/// Canonical text form of the graph (`.rot` format) in `*out_text`, freed by
/// the caller with [`wegner7_string_free`].
///
/// # Safety
/// `g` must be a live handle from [`wegner7_graph_parse_rot`] and `out_text`
/// a writable `char**` slot.
#[no_mangle]
pub unsafe extern "C" fn wegner7_graph_to_rot(
    g: *const Wegner7Graph,
    out_text: *mut *mut c_char,
) -> Wegner7Status {
    if g.is_null() || out_text.is_null() {
        return Wegner7Status::NullArgument;
    }
    string_out(io::write_rot(&(*g).inner), out_text)
}

/// Releases a string returned by this library. Null is accepted and ignored.
///
/// # Safety
/// `s` must be null or a pointer obtained from one of this library's
/// string-returning functions, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wegner7_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> *mut Wegner7Graph {
        let c = CString::new(text).unwrap();
        let mut h: *mut Wegner7Graph = ptr::null_mut();
        let st = unsafe { wegner7_graph_parse_rot(c.as_ptr(), &mut h) };
        assert_eq!(st, Wegner7Status::Ok);
        assert!(!h.is_null());
        h
    }

    const K4: &str = "4\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\n";

    #[test]
    fn parse_color_verify_round_trip() {
        let h = parse(K4);
        unsafe {
            assert_eq!(wegner7_graph_vertex_count(h), 4);
            assert_eq!(wegner7_graph_edge_count(h), 6);

            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(wegner7_color_json(h, &mut json), Wegner7Status::Ok);
            let report: serde_json::Value =
                serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
            assert_eq!(report["verified"], serde_json::json!(true));
            let colors: Vec<u8> = report["colors"]
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c.as_u64().unwrap() as u8)
                .collect();
            assert_eq!(wegner7_verify(h, colors.as_ptr(), colors.len()), Wegner7Status::Ok);

            // A broken coloring is rejected.
            let bad = vec![1u8; 4];
            assert_eq!(wegner7_verify(h, bad.as_ptr(), 4), Wegner7Status::InvalidInput);

            wegner7_string_free(json);
            wegner7_graph_free(h);
        }
    }

    #[test]
    fn null_and_malformed_arguments_are_rejected() {
        unsafe {
            let mut h: *mut Wegner7Graph = ptr::null_mut();
            assert_eq!(
                wegner7_graph_parse_rot(ptr::null(), &mut h),
                Wegner7Status::NullArgument
            );
            let garbage = CString::new("not a graph").unwrap();
            assert_eq!(
                wegner7_graph_parse_rot(garbage.as_ptr(), &mut h),
                Wegner7Status::ParseError
            );
            assert!(h.is_null());
            assert_eq!(wegner7_graph_vertex_count(ptr::null()), -1);
            let mut json: *mut c_char = ptr::null_mut();
            assert_eq!(
                wegner7_color_json(ptr::null(), &mut json),
                Wegner7Status::NullArgument
            );
            // Freeing null is a no-op.
            wegner7_graph_free(ptr::null_mut());
            wegner7_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn rot_text_round_trips_through_handle() {
        let h = parse(K4);
        unsafe {
            let mut text: *mut c_char = ptr::null_mut();
            assert_eq!(wegner7_graph_to_rot(h, &mut text), Wegner7Status::Ok);
            let rot = CStr::from_ptr(text).to_str().unwrap().to_owned();
            wegner7_string_free(text);
            wegner7_graph_free(h);
            let h2 = parse(&rot);
            assert_eq!(wegner7_graph_vertex_count(h2), 4);
            wegner7_graph_free(h2);
        }
    }
}
