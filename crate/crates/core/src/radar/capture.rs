use std::io::{Read, Write};
use std::path::Path;

use byteorder::{LittleEndian, ReadBytesExt, WriteBytesExt};
use num_complex::Complex32;

use super::{ArtifactLog, ChirpConfig};
use crate::error::{Error, Result};

pub const CAPTURE_MAGIC: [u8; 8] = *b"MMVIBIF\0";
pub const CAPTURE_VERSION: u32 = 1;

/// Header: magic, version, four f64 timing fields, three u32 counts, the
/// root seed. Everything little-endian.
const HEADER_LEN: usize = 8 + 4 + 4 * 8 + 3 * 4 + 8;

/// Raw IF samples of a recording, frame-major: `frames × chirps × adc samples`.
#[derive(Debug, Clone, PartialEq)]
pub struct IfCapture {
    config: ChirpConfig,
    n_frames: usize,
    data: Vec<Complex32>,
    /// Injected outliers; not part of the binary container (JSON sidecar).
    pub artifact_log: ArtifactLog,
    /// Root seed the capture was generated from.
    pub seed: u64,
}

impl IfCapture {
    pub fn from_parts(
        config: ChirpConfig,
        n_frames: usize,
        data: Vec<Complex32>,
        artifact_log: ArtifactLog,
        seed: u64,
    ) -> Result<Self> {
        config.validate()?;
        let expect = n_frames * config.chirps_per_frame * config.adc_samples_per_chirp;
        if data.len() != expect {
            return Err(Error::ShapeMismatch(format!(
                "{} samples for {n_frames} frames of {} chirps × {} samples (expected {expect})",
                data.len(),
                config.chirps_per_frame,
                config.adc_samples_per_chirp
            )));
        }
        for e in &artifact_log.entries {
            if e.frame >= n_frames || e.chirp >= config.chirps_per_frame {
                return Err(Error::ShapeMismatch(format!(
                    "artifact at frame {} chirp {} is outside the capture",
                    e.frame, e.chirp
                )));
            }
        }
        Ok(Self {
            config,
            n_frames,
            data,
            artifact_log,
            seed,
        })
    }

    pub fn config(&self) -> &ChirpConfig {
        &self.config
    }

    pub fn n_frames(&self) -> usize {
        self.n_frames
    }

    pub fn total_chirps(&self) -> usize {
        self.n_frames * self.config.chirps_per_frame
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn samples(&self) -> &[Complex32] {
        &self.data
    }

    pub fn samples_mut(&mut self) -> &mut [Complex32] {
        &mut self.data
    }

    pub fn chirp(&self, frame: usize, chirp: usize) -> &[Complex32] {
        let n = self.config.adc_samples_per_chirp;
        let start = (frame * self.config.chirps_per_frame + chirp) * n;
        &self.data[start..start + n]
    }

    pub fn chirp_mut(&mut self, frame: usize, chirp: usize) -> &mut [Complex32] {
        let n = self.config.adc_samples_per_chirp;
        let start = (frame * self.config.chirps_per_frame + chirp) * n;
        &mut self.data[start..start + n]
    }

    /// All chirps in acquisition order.
    pub fn chirps(&self) -> std::slice::Chunks<'_, Complex32> {
        self.data.chunks(self.config.adc_samples_per_chirp)
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let c = &self.config;
        w.write_all(&CAPTURE_MAGIC)?;
        w.write_u32::<LittleEndian>(CAPTURE_VERSION)?;
        w.write_f64::<LittleEndian>(c.carrier_freq)?;
        w.write_f64::<LittleEndian>(c.slope)?;
        w.write_f64::<LittleEndian>(c.chirp_duration)?;
        w.write_f64::<LittleEndian>(c.frame_period)?;
        w.write_u32::<LittleEndian>(c.adc_samples_per_chirp as u32)?;
        w.write_u32::<LittleEndian>(c.chirps_per_frame as u32)?;
        w.write_u32::<LittleEndian>(self.n_frames as u32)?;
        w.write_u64::<LittleEndian>(self.seed)?;
        let mut buf = Vec::with_capacity(self.data.len() * 8);
        for z in &self.data {
            buf.extend_from_slice(&z.re.to_le_bytes());
            buf.extend_from_slice(&z.im.to_le_bytes());
        }
        w.write_all(&buf)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.data.len() * 8);
        self.write_to(&mut out).expect("writing to a Vec cannot fail");
        out
    }

    /// Parses a container. The artifact log is left empty.
    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let fmt = |e: std::io::Error| Error::Format(format!("truncated header: {e}"));
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic).map_err(fmt)?;
        if magic != CAPTURE_MAGIC {
            return Err(Error::Format("bad magic, not an IF capture".into()));
        }
        let version = r.read_u32::<LittleEndian>().map_err(fmt)?;
        if version != CAPTURE_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let carrier_freq = r.read_f64::<LittleEndian>().map_err(fmt)?;
        let slope = r.read_f64::<LittleEndian>().map_err(fmt)?;
        let chirp_duration = r.read_f64::<LittleEndian>().map_err(fmt)?;
        let frame_period = r.read_f64::<LittleEndian>().map_err(fmt)?;
        let adc = r.read_u32::<LittleEndian>().map_err(fmt)? as usize;
        let cpf = r.read_u32::<LittleEndian>().map_err(fmt)? as usize;
        let n_frames = r.read_u32::<LittleEndian>().map_err(fmt)? as usize;
        let seed = r.read_u64::<LittleEndian>().map_err(fmt)?;
        let config = ChirpConfig {
            carrier_freq,
            slope,
            chirp_duration,
            adc_samples_per_chirp: adc,
            chirps_per_frame: cpf,
            frame_period,
        };
        config
            .validate()
            .map_err(|e| Error::Format(format!("header carries an invalid config: {e}")))?;
        let count = n_frames
            .checked_mul(cpf)
            .and_then(|v| v.checked_mul(adc))
            .ok_or_else(|| Error::Format("sample count overflows".into()))?;
        let mut raw = Vec::new();
        r.read_to_end(&mut raw)
            .map_err(|e| Error::Format(format!("reading samples: {e}")))?;
        if raw.len() != count * 8 {
            return Err(Error::Format(format!(
                "expected {} sample bytes, found {}",
                count * 8,
                raw.len()
            )));
        }
        let data = raw
            .chunks_exact(8)
            .map(|b| {
                Complex32::new(
                    f32::from_le_bytes([b[0], b[1], b[2], b[3]]),
                    f32::from_le_bytes([b[4], b[5], b[6], b[7]]),
                )
            })
            .collect();
        Self::from_parts(config, n_frames, data, ArtifactLog::default(), seed)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = std::io::BufWriter::new(file);
        self.write_to(&mut w).map_err(|e| Error::io(path, e))?;
        w.flush().map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_from(std::io::BufReader::new(file))
    }
}
