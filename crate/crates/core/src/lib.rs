//! Histogram-equalization contrast enhancement with brightness preservation.
//!
//! Methods: HE, BBHE, DSIHE, RMSHE, RSIHE, MMBEBHE and RSWHE (mean and median
//! variants), plus the AMBE, PSNR, SSIM and entropy quality metrics and a
//! Netpbm codec.
//!
//! ```
//! use histeq::{GrayImage, Method, MethodSpec};
//!
//! let img = GrayImage::new(2, 2, 4, vec![0, 0, 1, 3]).unwrap();
//! let out = MethodSpec::new(Method::Bbhe).enhance(&img);
//! assert_eq!(out.image.pixels(), &[1, 1, 1, 3]);
//! ```

pub mod color;
pub mod equalize;
pub mod error;
pub mod histogram;
pub mod image;
pub mod metrics;
pub mod pnm;

pub use color::{enhance_color, ColorMode};
pub use equalize::{Enhanced, Method, MethodSpec, RswheOptions};
pub use error::{HistogramError, ImageError};
pub use histogram::{Histogram, IntensityMap, Pdf, Segment, SplitRule};
pub use image::{ColorImage, GrayImage};
pub use metrics::MetricReport;
pub use pnm::{load_pnm, save_pnm, PnmEncoding, PnmError, PnmImage};
