//! Shared time-frequency primitives.

mod audio;
mod mel;
mod norm;
mod phase;
mod resample;
pub mod spectrum;
mod stft;

pub use audio::AudioBuffer;
pub(crate) use audio::align_pair;
pub use mel::{hz_to_mel, mel_filterbank, mel_spectrogram, mel_to_hz, MelConfig, MelFilterbank};
pub use norm::{mean_and_std, zscore, zscore_normalize};
pub use phase::{unwrap_phase, wrap_to_pi};
pub use resample::{lowpass, resample};
pub use stft::{hann_window, stft, Spectrogram};
