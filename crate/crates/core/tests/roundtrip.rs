//! Serialization roundtrips through real files: JSON code documents, alist
//! matrices, and the sweep report, all via the public API.

use std::path::PathBuf;

use stabkit::codes::{
    css_code_file, load_code_file, load_code_str, read_alist, stabilizer_code_file, steane,
    write_alist, write_alist_str, CodeSpec,
};
use stabkit::decoder::DecoderConfig;
use stabkit::gf2::BitMatrix;
use stabkit::sim::{stats_to_json, sweep, SimConfig};
use stabkit::stabilizer::StabilizerCode;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("stabkit-roundtrip-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    dir
}

#[test]
fn css_code_survives_a_json_roundtrip() {
    let css = steane();
    let doc = css_code_file("steane-copy", &css);
    let json = serde_json::to_string_pretty(&doc).unwrap();
    let loaded = load_code_str(&json).unwrap();
    assert_eq!(loaded.name, "steane-copy");
    let back = loaded.css.expect("css format loads with both halves");
    assert_eq!(back.hx(), css.hx());
    assert_eq!(back.hz(), css.hz());
    assert_eq!(loaded.stabilizer.pcm(), css.to_stabilizer().unwrap().pcm());
}

#[test]
fn plain_stabilizer_code_survives_a_json_roundtrip() {
    let code =
        StabilizerCode::new(BitMatrix::from_bit_rows(&[[1, 1, 0, 0], [0, 0, 1, 1]])).unwrap();
    let doc = stabilizer_code_file("pair", &code);
    let json = serde_json::to_string(&doc).unwrap();
    let loaded = load_code_str(&json).unwrap();
    assert!(loaded.css.is_none());
    assert_eq!(loaded.stabilizer.pcm(), code.pcm());
    assert_eq!(loaded.stabilizer.k(), 0);
}

#[test]
fn alist_file_roundtrip_preserves_the_matrix() {
    let dir = scratch("alist");
    let path = dir.join("hamming.alist");
    let h = BitMatrix::from_bit_rows(&[
        [1, 0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ]);
    write_alist(&path, &h).unwrap();
    assert_eq!(read_alist(&path).unwrap(), h);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), write_alist_str(&h));
}

#[test]
fn code_files_load_through_code_spec_by_extension() {
    let dir = scratch("spec");

    let json_path = dir.join("steane.json");
    let doc = css_code_file("steane-file", &steane());
    std::fs::write(&json_path, serde_json::to_string(&doc).unwrap()).unwrap();
    let spec = CodeSpec::File {
        path: json_path.display().to_string(),
    };
    let loaded = spec.load().unwrap();
    assert_eq!(loaded.name, "steane-file");
    assert!(loaded.css.is_some());

    let alist_path = dir.join("hamming.alist");
    let h = BitMatrix::from_bit_rows(&[
        [1, 0, 1, 0, 1, 0, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 1, 1, 1, 1],
    ]);
    write_alist(&alist_path, &h).unwrap();
    // A self-orthogonal classical PCM loads as the self-dual CSS pair.
    let loaded = load_code_file(&alist_path).unwrap();
    let css = loaded.css.expect("alist loads as CSS");
    assert_eq!(css.hx(), &h);
    assert_eq!(css.hz(), &h);
    assert_eq!(loaded.stabilizer.k(), 1);
}

#[test]
fn sweep_report_json_parses_back_with_matching_points() {
    let config = SimConfig {
        code: CodeSpec::Steane,
        p_values: vec![0.1],
        target_errors: 20,
        max_trials: 10_000,
        master_seed: 4,
        method: stabkit::classifier::MethodKind::KernelCoset,
        decoder: DecoderConfig::default(),
    };
    let points = sweep(&config).unwrap();
    let report = stats_to_json(&config, &points).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["config"]["code"]["kind"], "steane");
    assert_eq!(doc["points"].as_array().unwrap().len(), 1);
    assert_eq!(doc["points"][0]["p"], 0.1);
    assert_eq!(
        doc["points"][0]["trials"].as_u64().unwrap(),
        points[0].trials
    );
}
