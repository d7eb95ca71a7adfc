use std::fs;
use std::path::Path;
use std::process::Command;

use lattice_cli::config::parse_config;
use lattice_cli::run::{DENSITY_FILE, MANIFEST_FILE, TRAJECTORY_FILE, TRAJECTORY_HEADER};
use lattice_cli::run_scenario;

fn simulate(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_simulate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn csv(path: &Path) -> (Vec<String>, Vec<Vec<f64>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("run.cfg");
    fs::write(&path, body).unwrap();
    path.display().to_string()
}

#[test]
fn breathing_density_peaks_at_half_period() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("fig1");
    let o = simulate(&["--preset", "fig1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv(&out.join("fig1-F0.5").join(DENSITY_FILE));
    assert_eq!(rows.len(), 129);
    let sites: Vec<f64> = header[1..]
        .iter()
        .map(|h| h.trim_start_matches("x=").parse().unwrap())
        .collect();
    let row = &rows[64];
    assert!((row[0] - std::f64::consts::PI / 0.5).abs() < 1e-12);
    let (mut mean, mut second) = (0.0, 0.0);
    for (x, w) in sites.iter().zip(&row[1..]) {
        mean += x * w;
        second += x * x * w;
    }
    let variance = second - mean * mean;
    assert!((variance / 32.0 - 1.0).abs() < 0.01, "{variance}");
    assert!(out.join(MANIFEST_FILE).exists());
    for sub in ["fig1-F0.2", "fig1-F0.05", "fig1-F0"] {
        assert_eq!(csv(&out.join(sub).join(TRAJECTORY_FILE)).1.len(), 129);
    }
}

#[test]
fn wide_circle_stays_on_curve() {
    let tmp = tempfile::tempdir().unwrap();
    let o = simulate(&["--preset", "fig4", "--out", tmp.path().to_str().unwrap()]);
    assert!(o.status.success());
    let max_dev = |name: &str| {
        let (header, rows) = csv(&tmp.path().join(name).join(TRAJECTORY_FILE));
        assert_eq!(header.join(","), TRAJECTORY_HEADER);
        assert_eq!(rows.len(), 64);
        rows.iter().map(|r| r[7]).fold(0.0, f64::max)
    };
    let (wide, narrow) = (max_dev("fig4-wide"), max_dev("fig4-narrow"));
    assert!(wide <= 1.0, "{wide}");
    assert!(narrow > wide);
}

#[test]
fn every_output_has_one_row_per_sample() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("two");
    let cfg = write_config(
        tmp.path(),
        &format!(
            "mode = evolve2d\nFx_over_J = 0.5\nFy_over_J = 0.25\nsigma = 2\nX = 0\nY = 3\nPx = 0.3\nPy = 0\n\
             t_start = 0\nt_end = 6\nsamples = 7\noutput_dir = {}\n\
             outputs = trajectory-csv density-csv density-frames\n",
            out.display()
        ),
    );
    let o = simulate(&[&cfg]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(csv(&out.join(TRAJECTORY_FILE)).1.len(), 7);
    let (header, rows) = csv(&out.join(DENSITY_FILE));
    assert_eq!(rows.len(), 7);
    let nx = header.iter().filter(|h| h.starts_with("x=")).count();
    let ny = header.iter().filter(|h| h.starts_with("y=")).count();
    for r in &rows {
        let total_x: f64 = r[1..1 + nx].iter().sum();
        let total_y: f64 = r[1 + nx..].iter().sum();
        assert!((total_x - 1.0).abs() < 1e-10 && (total_y - 1.0).abs() < 1e-10);
    }
    let frames: Vec<_> = fs::read_dir(out.join("frames")).unwrap().collect();
    assert_eq!(frames.len(), 7);
    let pgm = fs::read(out.join("frames/frame_0003.pgm")).unwrap();
    let head = format!("P5\n{nx} {ny}\n255\n");
    assert!(pgm.starts_with(head.as_bytes()));
    assert_eq!(pgm.len(), head.len() + nx * ny);
    assert_eq!(*pgm[head.len()..].iter().max().unwrap(), 255);
}

#[test]
fn library_run_matches_binary_run() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    let body = |dir: &Path| {
        format!(
            "mode = evolve1d\nF_over_J = 0.2\nsigma = 1.5\nX = 2\nP = 1\nt_start = 0\nt_end = 31\nsamples = 40\noutput_dir = {}\noutputs = trajectory-csv density-csv density-frames\n",
            dir.display()
        )
    };
    let summaries = run_scenario(&parse_config(&body(&a)).unwrap()).unwrap();
    assert_eq!(summaries.len(), 1);
    assert_eq!(summaries[0].samples, 40);
    assert!(summaries[0].max_deviation < 1e-8);
    let cfg = write_config(tmp.path(), &body(&b));
    assert!(simulate(&[&cfg]).status.success());
    for f in [TRAJECTORY_FILE, DENSITY_FILE, "frames/frame_0017.pgm"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
    let pgm = fs::read(a.join("frames/frame_0000.pgm")).unwrap();
    assert!(pgm.starts_with(b"P5\n") && String::from_utf8_lossy(&pgm[..16]).contains(" 1\n255\n"));
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("never");
    let body = format!(
        "mode = breathing\nF_over_J = 0.5\nx0 = 0\nt_start = 0\nt_end = 1\nsamples = 0\noutput_dir = {}\n",
        out.display()
    );
    let cfg = write_config(tmp.path(), &body);
    let o = simulate(&[&cfg]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 6"));
    assert!(!out.exists(), "no files on a config error");
    assert_eq!(simulate(&["--validate", &cfg]).status.code(), Some(2));

    let cfg = write_config(tmp.path(), &body.replace("samples = 0", "samples = 3"));
    let o = simulate(&["--validate", &cfg]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!out.exists(), "validation writes nothing");

    // a kernel argument of ~4e7 sites overflows the propagation window
    let cfg = write_config(
        tmp.path(),
        &body
            .replace("samples = 0", "samples = 2")
            .replace("F_over_J = 0.5", "F_over_J = 1e-7")
            .replace("t_end = 1", "t_end = 3e7"),
    );
    let o = simulate(&[&cfg]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(!out.exists());

    assert_eq!(simulate(&["/nonexistent/config"]).status.code(), Some(2));
    assert_eq!(simulate(&["--preset", "fig9", "--out", "x"]).status.code(), Some(2));
    assert_eq!(simulate(&[]).status.code(), Some(2));
}
