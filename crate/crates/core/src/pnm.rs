//! Netpbm gray and color maps: P2/P5 (PGM) and P3/P6 (PPM).
//!
//! The number of gray levels of a decoded image is `maxval + 1`. Binary
//! samples are one byte for `maxval < 256`, otherwise two bytes big-endian.

use thiserror::Error;

use crate::error::ImageError;
use crate::image::{ColorImage, GrayImage};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PnmError {
    #[error("malformed header at byte {offset}: {reason}")]
    MalformedHeader { offset: usize, reason: &'static str },
    #[error("maxval {maxval} at byte {offset} is outside [1, 65535]")]
    UnsupportedMaxval { offset: usize, maxval: u64 },
    #[error("payload truncated at byte {offset}: expected {expected} samples, found {found}")]
    TruncatedPayload {
        offset: usize,
        expected: usize,
        found: usize,
    },
    #[error("sample {value} at byte {offset} exceeds maxval {maxval}")]
    SampleOutOfRange {
        offset: usize,
        value: u64,
        maxval: u32,
    },
    #[error("invalid sample token at byte {offset}")]
    MalformedPayload { offset: usize },
    #[error(transparent)]
    Image(#[from] ImageError),
}

/// Plain (ASCII) or raw (binary) raster.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PnmEncoding {
    Ascii,
    Binary,
}

/// A decoded PGM or PPM.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PnmImage {
    Gray(GrayImage),
    Color(ColorImage),
}

impl PnmImage {
    pub fn width(&self) -> usize {
        match self {
            PnmImage::Gray(g) => g.width(),
            PnmImage::Color(c) => c.width(),
        }
    }

    pub fn height(&self) -> usize {
        match self {
            PnmImage::Gray(g) => g.height(),
            PnmImage::Color(c) => c.height(),
        }
    }

    pub fn levels(&self) -> u32 {
        match self {
            PnmImage::Gray(g) => g.levels(),
            PnmImage::Color(c) => c.levels(),
        }
    }
}

impl From<GrayImage> for PnmImage {
    fn from(img: GrayImage) -> Self {
        PnmImage::Gray(img)
    }
}

impl From<ColorImage> for PnmImage {
    fn from(img: ColorImage) -> Self {
        PnmImage::Color(img)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|&c| c != b'\n' && c != b'\r')
                {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    /// Next decimal token; `Ok(None)` at end of input.
    fn token(&mut self) -> Result<Option<(usize, u64)>, usize> {
        self.skip_space_and_comments();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_digit() {
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(u64::from(b - b'0')))
                    .ok_or(start)?;
                self.pos += 1;
            } else if b.is_ascii_whitespace() || b == b'#' {
                break;
            } else {
                return Err(start);
            }
        }
        if self.pos == start {
            return if start == self.bytes.len() {
                Ok(None)
            } else {
                Err(start)
            };
        }
        Ok(Some((start, value)))
    }

    fn header_field(&mut self, what: &'static str) -> Result<(usize, u64), PnmError> {
        match self.token() {
            Ok(Some(t)) => Ok(t),
            Ok(None) => Err(PnmError::MalformedHeader {
                offset: self.pos,
                reason: what,
            }),
            Err(offset) => Err(PnmError::MalformedHeader {
                offset,
                reason: what,
            }),
        }
    }
}

struct Header {
    width: usize,
    height: usize,
    maxval: u32,
    channels: usize,
    encoding: PnmEncoding,
}

fn read_header(cur: &mut Cursor<'_>) -> Result<Header, PnmError> {
    let (channels, encoding) = match cur.bytes.get(..2) {
        Some(b"P2") => (1, PnmEncoding::Ascii),
        Some(b"P5") => (1, PnmEncoding::Binary),
        Some(b"P3") => (3, PnmEncoding::Ascii),
        Some(b"P6") => (3, PnmEncoding::Binary),
        _ => {
            return Err(PnmError::MalformedHeader {
                offset: 0,
                reason: "expected magic P2, P3, P5 or P6",
            })
        }
    };
    cur.pos = 2;
    if !cur
        .bytes
        .get(2)
        .is_some_and(|&b| b.is_ascii_whitespace() || b == b'#')
    {
        return Err(PnmError::MalformedHeader {
            offset: 2,
            reason: "expected whitespace after magic",
        });
    }
    let dim = |cur: &mut Cursor<'_>, what| -> Result<usize, PnmError> {
        let (offset, v) = cur.header_field(what)?;
        match usize::try_from(v) {
            Ok(v) if v > 0 && v <= (1 << 24) => Ok(v),
            _ => Err(PnmError::MalformedHeader {
                offset,
                reason: "dimensions must be in [1, 16777216]",
            }),
        }
    };
    let width = dim(cur, "expected width")?;
    let height = dim(cur, "expected height")?;
    let (offset, maxval) = cur.header_field("expected maxval")?;
    if !(1..=65535).contains(&maxval) {
        return Err(PnmError::UnsupportedMaxval { offset, maxval });
    }
    Ok(Header {
        width,
        height,
        maxval: maxval as u32,
        channels,
        encoding,
    })
}

fn read_ascii(cur: &mut Cursor<'_>, h: &Header, count: usize) -> Result<Vec<u16>, PnmError> {
    let mut samples = Vec::with_capacity(count);
    while samples.len() < count {
        match cur.token() {
            Ok(Some((offset, value))) => {
                if value > u64::from(h.maxval) {
                    return Err(PnmError::SampleOutOfRange {
                        offset,
                        value,
                        maxval: h.maxval,
                    });
                }
                samples.push(value as u16);
            }
            Ok(None) => {
                return Err(PnmError::TruncatedPayload {
                    offset: cur.pos,
                    expected: count,
                    found: samples.len(),
                })
            }
            Err(offset) => return Err(PnmError::MalformedPayload { offset }),
        }
    }
    Ok(samples)
}

fn read_binary(cur: &mut Cursor<'_>, h: &Header, count: usize) -> Result<Vec<u16>, PnmError> {
    match cur.bytes.get(cur.pos) {
        Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
        _ => {
            return Err(PnmError::MalformedHeader {
                offset: cur.pos,
                reason: "expected one whitespace byte before the raster",
            })
        }
    }
    let width = if h.maxval < 256 { 1 } else { 2 };
    let start = cur.pos;
    let payload = &cur.bytes[start..];
    if payload.len() < count * width {
        return Err(PnmError::TruncatedPayload {
            offset: cur.bytes.len(),
            expected: count,
            found: payload.len() / width,
        });
    }
    let mut samples = Vec::with_capacity(count);
    for (i, chunk) in payload[..count * width].chunks_exact(width).enumerate() {
        let value = match *chunk {
            [b] => u16::from(b),
            [hi, lo] => u16::from_be_bytes([hi, lo]),
            _ => unreachable!(),
        };
        if u32::from(value) > h.maxval {
            return Err(PnmError::SampleOutOfRange {
                offset: start + i * width,
                value: u64::from(value),
                maxval: h.maxval,
            });
        }
        samples.push(value);
    }
    Ok(samples)
}

/// Decodes a PGM or PPM file.
pub fn load_pnm(bytes: &[u8]) -> Result<PnmImage, PnmError> {
    let mut cur = Cursor { bytes, pos: 0 };
    let h = read_header(&mut cur)?;
    let count = h.width * h.height * h.channels;
    let samples = match h.encoding {
        PnmEncoding::Ascii => read_ascii(&mut cur, &h, count)?,
        PnmEncoding::Binary => read_binary(&mut cur, &h, count)?,
    };
    let levels = h.maxval + 1;
    Ok(if h.channels == 1 {
        PnmImage::Gray(GrayImage::new(h.width, h.height, levels, samples)?)
    } else {
        PnmImage::Color(ColorImage::from_interleaved(
            h.width, h.height, levels, &samples,
        )?)
    })
}

fn encode(
    magic: &str,
    width: usize,
    height: usize,
    levels: u32,
    samples: &[u16],
    encoding: PnmEncoding,
) -> Vec<u8> {
    let maxval = levels - 1;
    let mut out = format!("{magic}\n{width} {height}\n{maxval}\n").into_bytes();
    match encoding {
        PnmEncoding::Ascii => {
            let row = samples.len() / height;
            for line in samples.chunks(row) {
                let text: Vec<String> = line.iter().map(u16::to_string).collect();
                out.extend_from_slice(text.join(" ").as_bytes());
                out.push(b'\n');
            }
        }
        PnmEncoding::Binary if maxval < 256 => out.extend(samples.iter().map(|&v| v as u8)),
        PnmEncoding::Binary => {
            for &v in samples {
                out.extend_from_slice(&v.to_be_bytes());
            }
        }
    }
    out
}

/// Encodes as P2 (ASCII) or P5 (binary).
pub fn save_pgm(img: &GrayImage, encoding: PnmEncoding) -> Vec<u8> {
    let magic = match encoding {
        PnmEncoding::Ascii => "P2",
        PnmEncoding::Binary => "P5",
    };
    encode(
        magic,
        img.width(),
        img.height(),
        img.levels(),
        img.pixels(),
        encoding,
    )
}

/// Encodes as P3 (ASCII) or P6 (binary), samples interleaved per pixel.
pub fn save_ppm(img: &ColorImage, encoding: PnmEncoding) -> Vec<u8> {
    let magic = match encoding {
        PnmEncoding::Ascii => "P3",
        PnmEncoding::Binary => "P6",
    };
    encode(
        magic,
        img.width(),
        img.height(),
        img.levels(),
        &img.interleaved(),
        encoding,
    )
}

pub fn save_pnm(img: &PnmImage, encoding: PnmEncoding) -> Vec<u8> {
    match img {
        PnmImage::Gray(g) => save_pgm(g, encoding),
        PnmImage::Color(c) => save_ppm(c, encoding),
    }
}
