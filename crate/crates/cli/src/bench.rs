//! Seeded keygen + attack trials, reported as JSON lines.
//!
//! Trial `i` draws from `ChaCha20Rng::seed_from_u64(seed)` on stream `i`,
//! so a report is reproducible from `(preset, seed)` up to its timings.
//! Trials run one after another: the attack stages already use every core,
//! and concurrent trials would blur the per-stage timings.

use std::io::Write;
use std::time::Instant;

use clap::ValueEnum;
use log::warn;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use trs_core::attack::recover_key;
use trs_core::cryptosystem::keygen;
use trs_core::trs::TrsParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// (2^8, 255, 117, 1)
    Table1,
    /// (2^7, 127, 60, 1)
    Small,
    /// (2^8, 255, 117, 2): top field 2^32
    L2,
}

impl Preset {
    pub fn shape(self) -> (u128, usize, usize, usize) {
        match self {
            Preset::Table1 => (256, 255, 117, 1),
            Preset::Small => (128, 127, 60, 1),
            Preset::L2 => (256, 255, 117, 2),
        }
    }

    pub fn params(self) -> TrsParams {
        let (q0, n, k, l) = self.shape();
        TrsParams::validate(q0, n, k, l).expect("presets are valid")
    }
}

/// One trial. Stage timings are absent when the attack failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub q0: u128,
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub seed: u64,
    pub trial: u64,
    pub success: bool,
    pub error: Option<String>,
    pub keygen_us: u64,
    pub subfield_subcode_us: Option<u64>,
    pub square_us: Option<u64>,
    pub sidelnikov_shestakov_us: Option<u64>,
    pub shift_search_us: Option<u64>,
    pub eta_us: Option<u64>,
    pub scrambler_us: Option<u64>,
    /// Wall time of the whole attack, including failed ones.
    pub total_us: u64,
}

fn us(d: std::time::Duration) -> u64 {
    d.as_micros() as u64
}

pub fn trial(preset: Preset, seed: u64, trial: u64) -> BenchRecord {
    let params = preset.params();
    let tower = params.tower().expect("presets fit the field");
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let (q0, n, k, l) = preset.shape();
    let mut rec = BenchRecord {
        q0,
        n,
        k,
        l,
        seed,
        trial,
        success: false,
        error: None,
        keygen_us: 0,
        subfield_subcode_us: None,
        square_us: None,
        sidelnikov_shestakov_us: None,
        shift_search_us: None,
        eta_us: None,
        scrambler_us: None,
        total_us: 0,
    };
    let clock = Instant::now();
    let pk = match keygen(&tower, params.clone(), &mut rng) {
        Ok((pk, _)) => pk,
        Err(e) => {
            rec.error = Some(format!("keygen: {e}"));
            return rec;
        }
    };
    rec.keygen_us = us(clock.elapsed());

    let clock = Instant::now();
    let outcome = recover_key(&tower, &pk, false);
    rec.total_us = us(clock.elapsed());
    match outcome {
        Ok(report) => {
            let t = &report.timings;
            rec.subfield_subcode_us = Some(us(t.subfield_subcode));
            rec.square_us = Some(us(t.square));
            rec.sidelnikov_shestakov_us = Some(us(t.sidelnikov_shestakov));
            rec.shift_search_us = Some(us(t.shift_search));
            rec.eta_us = Some(us(t.eta));
            rec.scrambler_us = Some(us(t.scrambler));
            match report.key.private_key(&tower, &params) {
                Ok(sk) if sk.public(&tower) == pk => rec.success = true,
                Ok(_) => rec.error = Some("recovered key does not reproduce G_pub".into()),
                Err(e) => rec.error = Some(e.to_string()),
            }
        }
        Err(e) => rec.error = Some(e.to_string()),
    }
    rec
}

/// Runs the trials, writing each record as soon as it is done. Returns the
/// number of failed trials.
pub fn run_bench(preset: Preset, trials: u64, seed: u64, out: &mut impl Write) -> std::io::Result<u64> {
    let mut failures = 0;
    for i in 0..trials {
        let rec = trial(preset, seed, i);
        if !rec.success {
            warn!("trial {i}: {}", rec.error.as_deref().unwrap_or("failed"));
            failures += 1;
        }
        serde_json::to_writer(&mut *out, &rec)?;
        out.write_all(b"\n")?;
        out.flush()?;
    }
    Ok(failures)
}
