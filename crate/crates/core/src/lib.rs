//! Analysis of two-sided compact plane sets at finite scale.
//!
//! A compact set is modeled as a finite union of polylines with a gluing
//! tolerance. The crate rasterizes such a set, decomposes its complement
//! into connected domains, decides accessibility of boundary points via
//! explicit end-cuts and cross-cuts, measures neighborhood components and
//! the relative distance that metrizes the component topology, and runs the
//! whole pipeline into a classification report that checks the resulting
//! verdicts against the simple-closed-curve recognizer.
//!
//! ```
//! use dsets::classifier::{classify, ClassifyConfig, Verdict};
//! use dsets::{make_fixture, FixtureSpec};
//!
//! let circle = make_fixture(FixtureSpec::Circle { radius: 1.0 }, 0.005).unwrap();
//! let config = ClassifyConfig::default_for(0.02).unwrap();
//! let report = classify(&circle, "circle:1", &config).unwrap();
//! assert!(report.two_sided);
//! assert_eq!(report.d_set, Verdict::True);
//! assert_eq!(report.jordan, Verdict::True);
//! ```

pub mod accessibility;
pub mod classifier;
pub mod connectivity;
pub mod error;
pub mod geom;
pub mod lc_topology;
pub mod raster;
pub mod set_model;

pub use error::{Error, Result};
pub use geom::{Point, Rect};
pub use set_model::{
    build_complex, clip_to_disc, clip_to_rect, make_fixture, ClippedPiece, CurveComplex, Disc,
    FixtureSpec, Polyline,
};
