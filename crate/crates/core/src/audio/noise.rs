use super::{rms, AudioBuffer};
use crate::error::{Error, Result};

/// Gain that brings `noise` (truncated to the clean length) to `snr_db`
/// below `clean`, measured as the ratio of whole-clip mean squares.
pub fn noise_gain(clean: &AudioBuffer, noise: &AudioBuffer, snr_db: f64) -> Result<f64> {
    if clean.sample_rate() != noise.sample_rate() {
        return Err(Error::RateMismatch {
            left: clean.sample_rate(),
            right: noise.sample_rate(),
        });
    }
    if noise.len() < clean.len() {
        return Err(Error::NoiseTooShort {
            noise: noise.len(),
            clean: clean.len(),
        });
    }
    let clean_rms = clean.rms();
    if clean_rms == 0.0 {
        return Err(Error::ZeroEnergy { which: "clean" });
    }
    let noise_rms = rms(&noise.samples()[..clean.len()]);
    if noise_rms == 0.0 {
        return Err(Error::ZeroEnergy { which: "noise" });
    }
    Ok(clean_rms / (noise_rms * 10f64.powf(snr_db / 20.0)))
}

/// Returns `clean + g * noise` with `g` from [`noise_gain`]. No clipping.
pub fn mix_noise(clean: &AudioBuffer, noise: &AudioBuffer, snr_db: f64) -> Result<AudioBuffer> {
    let g = noise_gain(clean, noise, snr_db)?;
    let mixed = clean
        .samples()
        .iter()
        .zip(noise.samples())
        .map(|(c, n)| c + g * n)
        .collect();
    AudioBuffer::new(mixed, clean.sample_rate())
}

/// `10 log10(rms(signal)^2 / rms(noise)^2)`.
pub fn snr_db(signal: &[f64], noise: &[f64]) -> f64 {
    20.0 * (rms(signal) / rms(noise)).log10()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth;

    fn buf(x: Vec<f64>) -> AudioBuffer {
        AudioBuffer::new(x, 16000).unwrap()
    }

    #[test]
    fn zero_db_with_matched_rms_is_unit_gain() {
        let clean = buf(vec![0.5, -0.5, 0.5, -0.5]);
        let noise = buf(vec![-0.5, -0.5, 0.5, 0.5, 9.0]);
        assert!((noise_gain(&clean, &noise, 0.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn twenty_db_is_tenfold_amplitude() {
        let clean = synth::tone(200.0, 0.0, 16000, 1600, 0.3);
        let noise = synth::white_noise(2000, 1.0, 16000, 9);
        let mixed = mix_noise(&clean, &noise, 20.0).unwrap();
        let added: Vec<f64> = mixed
            .samples()
            .iter()
            .zip(clean.samples())
            .map(|(m, c)| m - c)
            .collect();
        let ratio = clean.rms() / rms(&added);
        assert!((ratio - 10.0).abs() < 1e-9, "{ratio}");
    }

    #[test]
    fn measured_snr_matches_request() {
        let clean = synth::tone(200.0, 0.3, 16000, 16000, 0.5);
        let noise = synth::white_noise(16000, 0.2, 16000, 1);
        let g = noise_gain(&clean, &noise, 5.0).unwrap();
        let scaled: Vec<f64> = noise.samples().iter().map(|n| g * n).collect();
        assert!((snr_db(clean.samples(), &scaled) - 5.0).abs() < 0.01);
    }

    #[test]
    fn error_cases() {
        let clean = buf(vec![0.1; 10]);
        let other_rate = AudioBuffer::new(vec![0.1; 10], 8000).unwrap();
        assert!(matches!(
            mix_noise(&clean, &other_rate, 0.0),
            Err(Error::RateMismatch { .. })
        ));
        assert!(matches!(
            mix_noise(&clean, &buf(vec![0.1; 9]), 0.0),
            Err(Error::NoiseTooShort { .. })
        ));
        assert!(matches!(
            mix_noise(&buf(vec![0.0; 10]), &clean, 0.0),
            Err(Error::ZeroEnergy { which: "clean" })
        ));
        assert!(matches!(
            mix_noise(&clean, &buf(vec![0.0; 10]), 0.0),
            Err(Error::ZeroEnergy { which: "noise" })
        ));
    }

    #[test]
    fn only_the_clean_span_of_noise_sets_the_gain() {
        let clean = buf(vec![1.0, -1.0]);
        let noise = buf(vec![1.0, -1.0, 100.0, 100.0]);
        assert_eq!(noise_gain(&clean, &noise, 0.0).unwrap(), 1.0);
        assert_eq!(mix_noise(&clean, &noise, 0.0).unwrap().len(), 2);
    }
}
