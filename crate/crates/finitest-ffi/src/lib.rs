//! C ABI over the tester pipeline. Handles are opaque; every fallible call
//! returns a status code and reports details through `ft_last_error`.
//! Strings returned through out-parameters are owned by the caller and
//! must be released with `ft_string_free`.

// Pointer arguments follow the usual C contract: they must be live handles
// from this library or valid NUL-terminated strings. Null is checked and
// reported; anything else is the caller's responsibility.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use finitest::catalog::TypeCatalog;
use finitest::compiler::{compile_hnf, sentence_to_hnf, CompileOptions, CompiledProperty};
use finitest::error::Error;
use finitest::graph::{ExplicitGraph, ExplicitOracle, NeighborOracle};
use finitest::harness::{gen_family, Family, FamilySpec};
use finitest::logic::{eval_exact, parse_sentence, HnfFile};
use finitest::tester::{compile_tester, run_single, run_union, CompiledUnit, Decision};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::sync::Arc;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ResourceLimit = 4,
    NotInClass = 5,
    ArgumentError = 6,
    InternalError = 7,
}

/// Tester verdicts.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FtVerdict {
    Accept = 0,
    Reject = 1,
    OutsideClass = 2,
}

pub struct FtCatalog {
    inner: Arc<TypeCatalog>,
}

pub struct FtProperty {
    inner: CompiledProperty,
}

pub struct FtGraph {
    kind: GraphKind,
}

enum GraphKind {
    Explicit { graph: ExplicitGraph, d: u32 },
    Family(Family),
}

pub struct FtTester {
    catalog: Arc<TypeCatalog>,
    units: Vec<CompiledUnit>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(msg).ok();
    });
}

fn status_of(err: &Error) -> FtStatus {
    match err {
        Error::Parse { .. } | Error::Json(_) => FtStatus::ParseError,
        Error::Resource(_) => FtStatus::ResourceLimit,
        Error::NotInClass(_) => FtStatus::NotInClass,
        Error::Argument(_) | Error::SizeMismatch(_) | Error::CatalogMismatch(_) => {
            FtStatus::ArgumentError
        }
        _ => FtStatus::InternalError,
    }
}

fn fail(err: Error) -> FtStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, FtStatus> {
    if ptr.is_null() {
        set_error("null string argument".into());
        return Err(FtStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8".into());
        FtStatus::InvalidUtf8
    })
}

macro_rules! deref {
    ($ptr:expr) => {
        match unsafe { $ptr.as_ref() } {
            Some(r) => r,
            None => {
                set_error("null handle argument".into());
                return FtStatus::NullPointer;
            }
        }
    };
}

macro_rules! out_slot {
    ($ptr:expr) => {
        match unsafe { $ptr.as_mut() } {
            Some(r) => r,
            None => {
                set_error("null output pointer".into());
                return FtStatus::NullPointer;
            }
        }
    };
}

fn give_string(out: &mut *mut c_char, text: String) -> FtStatus {
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            FtStatus::Ok
        }
        Err(_) => {
            set_error("output contained interior NUL".into());
            FtStatus::InternalError
        }
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn ft_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Most recent error message on this thread, or NULL. Free the result
/// with `ft_string_free`.
#[no_mangle]
pub extern "C" fn ft_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// # Safety
/// `s` must have been returned by this library and not freed yet.
#[no_mangle]
pub unsafe extern "C" fn ft_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Build the type catalog for component bound `c` and degree bound `d`.
#[no_mangle]
pub extern "C" fn ft_catalog_new(c: u32, d: u32, out: *mut *mut FtCatalog) -> FtStatus {
    let out = out_slot!(out);
    match TypeCatalog::new(c, d) {
        Ok(catalog) => {
            *out = Box::into_raw(Box::new(FtCatalog { inner: Arc::new(catalog) }));
            FtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `cat` must be a live handle from `ft_catalog_new`.
#[no_mangle]
pub unsafe extern "C" fn ft_catalog_free(cat: *mut FtCatalog) {
    if !cat.is_null() {
        drop(Box::from_raw(cat));
    }
}

#[no_mangle]
pub extern "C" fn ft_catalog_component_count(cat: *const FtCatalog) -> usize {
    unsafe { cat.as_ref() }.map_or(0, |c| c.inner.component_types().len())
}

#[no_mangle]
pub extern "C" fn ft_catalog_ball_count(cat: *const FtCatalog) -> usize {
    unsafe { cat.as_ref() }.map_or(0, |c| c.inner.ball_type_count())
}

/// Catalog contents as JSON.
#[no_mangle]
pub extern "C" fn ft_catalog_json(cat: *const FtCatalog, out: *mut *mut c_char) -> FtStatus {
    let cat = deref!(cat);
    let out = out_slot!(out);
    match serde_json::to_string_pretty(&cat.inner.export()) {
        Ok(json) => give_string(out, json),
        Err(e) => {
            set_error(e.to_string());
            FtStatus::InternalError
        }
    }
}

/// Compile a Hanf-normal-form JSON document against the catalog.
#[no_mangle]
pub extern "C" fn ft_property_compile_hnf(
    cat: *const FtCatalog,
    hnf_json: *const c_char,
    out: *mut *mut FtProperty,
) -> FtStatus {
    let cat = deref!(cat);
    let out = out_slot!(out);
    let text = match unsafe { read_str(hnf_json) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    let result = HnfFile::parse(text)
        .and_then(|f| f.resolve(&cat.inner))
        .and_then(|hnf| compile_hnf(&hnf, &cat.inner, &CompileOptions::default()));
    match result {
        Ok(property) => {
            *out = Box::into_raw(Box::new(FtProperty { inner: property }));
            FtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Compile a textual sentence in the guarded counting fragment.
#[no_mangle]
pub extern "C" fn ft_property_compile_sentence(
    cat: *const FtCatalog,
    sentence: *const c_char,
    out: *mut *mut FtProperty,
) -> FtStatus {
    let cat = deref!(cat);
    let out = out_slot!(out);
    let text = match unsafe { read_str(sentence) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    let opts = CompileOptions::default();
    let result = parse_sentence(text)
        .and_then(|s| sentence_to_hnf(&s, &cat.inner, &opts))
        .and_then(|hnf| compile_hnf(&hnf, &cat.inner, &opts));
    match result {
        Ok(property) => {
            *out = Box::into_raw(Box::new(FtProperty { inner: property }));
            FtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Load previously compiled templates from JSON.
#[no_mangle]
pub extern "C" fn ft_property_from_json(
    json: *const c_char,
    out: *mut *mut FtProperty,
) -> FtStatus {
    let out = out_slot!(out);
    let text = match unsafe { read_str(json) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    match CompiledProperty::from_json(text) {
        Ok(property) => {
            *out = Box::into_raw(Box::new(FtProperty { inner: property }));
            FtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

#[no_mangle]
pub extern "C" fn ft_property_json(
    property: *const FtProperty,
    out: *mut *mut c_char,
) -> FtStatus {
    let property = deref!(property);
    let out = out_slot!(out);
    give_string(out, property.inner.to_json())
}

#[no_mangle]
pub extern "C" fn ft_property_template_count(property: *const FtProperty) -> usize {
    unsafe { property.as_ref() }.map_or(0, |p| p.inner.templates.len())
}

/// # Safety
/// `property` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ft_property_free(property: *mut FtProperty) {
    if !property.is_null() {
        drop(Box::from_raw(property));
    }
}

/// Parse an explicit graph from the textual or JSON file format.
#[no_mangle]
pub extern "C" fn ft_graph_parse(text: *const c_char, out: *mut *mut FtGraph) -> FtStatus {
    let out = out_slot!(out);
    let text = match unsafe { read_str(text) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    match ExplicitGraph::from_str_any(text) {
        Ok((graph, d)) => {
            *out = Box::into_raw(Box::new(FtGraph { kind: GraphKind::Explicit { graph, d } }));
            FtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Instantiate a named family, e.g. "EDGES:n=1000000"; answers neighbor
/// queries procedurally, so n may be far beyond materialization.
#[no_mangle]
pub extern "C" fn ft_graph_family(
    cat: *const FtCatalog,
    spec: *const c_char,
    out: *mut *mut FtGraph,
) -> FtStatus {
    let cat = deref!(cat);
    let out = out_slot!(out);
    let text = match unsafe { read_str(spec) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    match FamilySpec::parse(text).and_then(|s| gen_family(&s, &cat.inner)) {
        Ok(family) => {
            *out = Box::into_raw(Box::new(FtGraph { kind: GraphKind::Family(family) }));
            FtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

#[no_mangle]
pub extern "C" fn ft_graph_vertex_count(graph: *const FtGraph) -> u64 {
    unsafe { graph.as_ref() }.map_or(0, |g| match &g.kind {
        GraphKind::Explicit { graph, .. } => graph.vertex_count() as u64,
        GraphKind::Family(f) => f.n(),
    })
}

/// Total neighbor queries answered by this graph so far (family graphs
/// only; explicit graphs are wrapped per run).
#[no_mangle]
pub extern "C" fn ft_graph_queries(graph: *const FtGraph) -> u64 {
    unsafe { graph.as_ref() }.map_or(0, |g| match &g.kind {
        GraphKind::Explicit { .. } => 0,
        GraphKind::Family(f) => f.queries(),
    })
}

/// # Safety
/// `graph` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ft_graph_free(graph: *mut FtGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Evaluate a sentence on a graph with the exact model checker. Family
/// graphs are materialized first, so this is desk-scale only.
#[no_mangle]
pub extern "C" fn ft_eval_sentence(
    sentence: *const c_char,
    graph: *const FtGraph,
    out: *mut bool,
) -> FtStatus {
    let graph = deref!(graph);
    let out = out_slot!(out);
    let text = match unsafe { read_str(sentence) } {
        Ok(t) => t,
        Err(s) => return s,
    };
    let owned;
    let explicit = match &graph.kind {
        GraphKind::Explicit { graph, .. } => graph,
        GraphKind::Family(f) => match f.materialize() {
            Ok(g) => {
                owned = g;
                &owned
            }
            Err(e) => return fail(e),
        },
    };
    match parse_sentence(text).and_then(|s| eval_exact(explicit, &s)) {
        Ok(v) => {
            *out = v;
            FtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Compile an executable tester for the property at the given epsilon.
#[no_mangle]
pub extern "C" fn ft_tester_new(
    cat: *const FtCatalog,
    property: *const FtProperty,
    epsilon: f64,
    out: *mut *mut FtTester,
) -> FtStatus {
    let cat = deref!(cat);
    let property = deref!(property);
    let out = out_slot!(out);
    match compile_tester(
        &property.inner,
        &cat.inner,
        epsilon,
        None,
        CompileOptions::default().unit_guard,
    ) {
        Ok(units) => {
            *out = Box::into_raw(Box::new(FtTester { catalog: cat.inner.clone(), units }));
            FtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

#[no_mangle]
pub extern "C" fn ft_tester_unit_count(tester: *const FtTester) -> usize {
    unsafe { tester.as_ref() }.map_or(0, |t| t.units.len())
}

/// Exact-regime threshold of one unit, or 0 when the index is bad.
#[no_mangle]
pub extern "C" fn ft_tester_unit_n0(tester: *const FtTester, unit: usize) -> u64 {
    unsafe { tester.as_ref() }.and_then(|t| t.units.get(unit)).map_or(0, |u| u.n0)
}

/// Samples per trial of one unit, or 0 when the index is bad.
#[no_mangle]
pub extern "C" fn ft_tester_unit_samples(tester: *const FtTester, unit: usize) -> u64 {
    unsafe { tester.as_ref() }.and_then(|t| t.units.get(unit)).map_or(0, |u| u.q)
}

fn run_with_oracle(
    tester: &FtTester,
    graph: &FtGraph,
    seed: u64,
    unit: Option<usize>,
) -> Result<Decision, Error> {
    let explicit_oracle;
    let oracle: &dyn NeighborOracle = match &graph.kind {
        GraphKind::Explicit { graph, d } => {
            explicit_oracle = ExplicitOracle::new(graph, (*d).max(tester.catalog.d()));
            &explicit_oracle
        }
        GraphKind::Family(f) => f,
    };
    let verdict = match unit {
        Some(i) => {
            let u = tester.units.get(i).ok_or_else(|| {
                Error::Argument(format!("unit {i} out of range (have {})", tester.units.len()))
            })?;
            run_single(u, oracle, &tester.catalog, seed)?
        }
        None => run_union(&tester.units, oracle, &tester.catalog, seed)?,
    };
    Ok(verdict.decision)
}

fn verdict_code(d: Decision) -> FtVerdict {
    match d {
        Decision::Accept => FtVerdict::Accept,
        Decision::Reject => FtVerdict::Reject,
        Decision::NotInClass => FtVerdict::OutsideClass,
    }
}

/// Run the amplified union tester once with the given seed.
#[no_mangle]
pub extern "C" fn ft_tester_run(
    tester: *const FtTester,
    graph: *const FtGraph,
    seed: u64,
    out: *mut FtVerdict,
) -> FtStatus {
    let tester = deref!(tester);
    let graph = deref!(graph);
    let out = out_slot!(out);
    match run_with_oracle(tester, graph, seed, None) {
        Ok(decision) => {
            *out = verdict_code(decision);
            FtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Run one unit (no amplification) once with the given seed.
#[no_mangle]
pub extern "C" fn ft_tester_run_unit(
    tester: *const FtTester,
    unit: usize,
    graph: *const FtGraph,
    seed: u64,
    out: *mut FtVerdict,
) -> FtStatus {
    let tester = deref!(tester);
    let graph = deref!(graph);
    let out = out_slot!(out);
    match run_with_oracle(tester, graph, seed, Some(unit)) {
        Ok(decision) => {
            *out = verdict_code(decision);
            FtStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// # Safety
/// `tester` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ft_tester_free(tester: *mut FtTester) {
    if !tester.is_null() {
        drop(Box::from_raw(tester));
    }
}
