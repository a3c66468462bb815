use std::fs;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{save_segment, HarnessError};
use crate::csi::{make_scenario, simulate, ActivityLabel};
use crate::util::derive_seed;

/// Manifest filename at the dataset root.
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

/// One segment file with its ground truth and split assignment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    /// Path relative to the dataset root.
    pub path: String,
    pub label: ActivityLabel,
    pub split: Split,
}

/// The dataset index: bookkeeping for every segment file under a root
/// directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub sample_rate: f64,
    pub duration: f64,
    pub entries: Vec<ManifestEntry>,
    #[serde(skip)]
    root: PathBuf,
}

impl DatasetManifest {
    /// Loads `manifest.json`, resolving entries against its directory and
    /// checking that every referenced file exists.
    pub fn load(manifest_path: &Path) -> Result<Self, HarnessError> {
        let content = fs::read_to_string(manifest_path).map_err(|source| HarnessError::Io {
            path: manifest_path.to_path_buf(),
            reason: source.to_string(),
        })?;
        let mut manifest: DatasetManifest = serde_json::from_str(&content).map_err(|e| {
            HarnessError::Manifest(format!("{}: {e}", manifest_path.display()))
        })?;
        manifest.root = manifest_path
            .parent()
            .map(Path::to_path_buf)
            .unwrap_or_default();
        for entry in &manifest.entries {
            let path = manifest.segment_path(entry);
            if !path.is_file() {
                return Err(HarnessError::Manifest(format!(
                    "missing segment file {}",
                    path.display()
                )));
            }
        }
        Ok(manifest)
    }

    fn save(&self, manifest_path: &Path) -> Result<(), HarnessError> {
        let json = serde_json::to_string_pretty(self).map_err(|e| {
            HarnessError::Manifest(format!("serialization failed: {e}"))
        })?;
        fs::write(manifest_path, json).map_err(|source| HarnessError::Io {
            path: manifest_path.to_path_buf(),
            reason: source.to_string(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Absolute path of an entry's segment file.
    pub fn segment_path(&self, entry: &ManifestEntry) -> PathBuf {
        self.root.join(&entry.path)
    }

    pub fn split_entries(&self, split: Split) -> impl Iterator<Item = &ManifestEntry> {
        self.entries.iter().filter(move |e| e.split == split)
    }

    pub fn count(&self, label: ActivityLabel, split: Split) -> usize {
        self.entries
            .iter()
            .filter(|e| e.label == label && e.split == split)
            .count()
    }
}

/// Per-label segment counts, indexed in [`ActivityLabel::ALL`] order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LabelCounts([usize; 4]);

impl LabelCounts {
    pub fn new(breathing: usize, walking: usize, falling: usize, no_event: usize) -> Self {
        Self([breathing, walking, falling, no_event])
    }

    pub fn uniform(count: usize) -> Self {
        Self([count; 4])
    }

    pub fn get(&self, label: ActivityLabel) -> usize {
        self.0[label.index()]
    }

    pub fn set(&mut self, label: ActivityLabel, count: usize) {
        self.0[label.index()] = count;
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Settings for synthetic dataset generation.
#[derive(Debug, Clone, PartialEq)]
pub struct GenerateOptions {
    /// Master seed; everything (scenarios, noise, splits) derives from it.
    pub seed: u64,
    pub counts: LabelCounts,
    pub sample_rate: f64,
    pub duration: f64,
    /// Overrides the scenario default noise when set.
    pub noise_sigma: Option<f64>,
}

impl GenerateOptions {
    pub fn new(seed: u64, counts: LabelCounts) -> Self {
        Self {
            seed,
            counts,
            sample_rate: crate::csi::DEFAULT_SAMPLE_RATE,
            duration: crate::csi::DEFAULT_DURATION,
            noise_sigma: None,
        }
    }
}

// Salt tags keeping the per-purpose RNG streams apart.
const SALT_SEGMENT: u64 = 0x01;
const SALT_SPLIT: u64 = 0x02;

fn salt(tag: u64, label: ActivityLabel, index: u64) -> u64 {
    (tag << 48) ^ ((label.index() as u64) << 40) ^ index
}

/// Simulates `counts` segments per label, writes them as segment files plus
/// a `manifest.json`, and assigns a per-label 70/30 train/test split
/// (train = round(0.7 n)). Byte-identical output for identical options.
pub fn generate_dataset(
    options: &GenerateOptions,
    out_dir: &Path,
) -> Result<DatasetManifest, HarnessError> {
    if options.counts.total() == 0 {
        return Err(HarnessError::InvalidInput(
            "at least one segment is required".into(),
        ));
    }
    fs::create_dir_all(out_dir).map_err(|source| HarnessError::Io {
        path: out_dir.to_path_buf(),
        reason: source.to_string(),
    })?;

    let mut entries = Vec::with_capacity(options.counts.total());
    for label in ActivityLabel::ALL {
        let n = options.counts.get(label);
        if n == 0 {
            continue;
        }

        // Deterministic shuffled split: the first round(0.7 n) shuffled
        // positions train, the rest test.
        let mut order: Vec<usize> = (0..n).collect();
        let mut split_rng =
            ChaCha8Rng::seed_from_u64(derive_seed(options.seed, salt(SALT_SPLIT, label, 0)));
        order.shuffle(&mut split_rng);
        let train_count = (0.7 * n as f64).round() as usize;
        let mut splits = vec![Split::Test; n];
        for &i in order.iter().take(train_count) {
            splits[i] = Split::Train;
        }

        for i in 0..n {
            let scenario_seed = derive_seed(options.seed, salt(SALT_SEGMENT, label, i as u64));
            let mut params = make_scenario(label, scenario_seed);
            if let Some(sigma) = options.noise_sigma {
                params.noise_sigma = sigma;
            }
            let segment = simulate(&params, options.sample_rate, options.duration)?
                .with_label(Some(label));
            let filename = format!("{}_{i:04}.csv", label.slug());
            save_segment(&segment, &out_dir.join(&filename))?;
            entries.push(ManifestEntry {
                path: filename,
                label,
                split: splits[i],
            });
        }
    }

    let manifest = DatasetManifest {
        sample_rate: options.sample_rate,
        duration: options.duration,
        entries,
        root: out_dir.to_path_buf(),
    };
    manifest.save(&out_dir.join(MANIFEST_FILE))?;
    Ok(manifest)
}
