use std::io::Write;
use std::process::{Command, Output};

fn risopt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_risopt"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn temp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("risopt-{}-{name}", std::process::id()));
    std::fs::File::create(&path)
        .unwrap()
        .write_all(contents.as_bytes())
        .unwrap();
    path
}

#[test]
fn list_recipes_names_every_recipe() {
    let out = risopt(&["list-recipes"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for r in risopt::recipes::RECIPES {
        assert!(text.contains(r.name), "{} missing", r.name);
    }
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(risopt(&["bench"]).status.code(), Some(2));
    assert_eq!(risopt(&["bench", "no-such-recipe"]).status.code(), Some(2));
    assert_eq!(
        risopt(&["bench", "fig-cap-vs-k", "--method", "cpp"])
            .status
            .code(),
        Some(2)
    );
    let bad = temp_file("bad.toml", "colour = \"red\"\n");
    assert_eq!(
        risopt(&["bench", "--config", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_file(bad).ok();
}

#[test]
fn budget_overflow_exits_3() {
    let out = risopt(&[
        "select-config",
        "mcsb",
        "--m",
        "20",
        "--k",
        "4",
        "--n",
        "64",
        "--r",
        "1000000",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let out = risopt(&[
        "optimize",
        "--n",
        "64",
        "--k",
        "4",
        "--method",
        "exhaustive",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn optimize_reads_a_channel_file() {
    let path = temp_file(
        "channel.toml",
        "h0 = [1e-7, 0.0]\nv = [[1e-7, 0.3], [1e-7, 2.1], [1e-7, 4.0]]\n",
    );
    let out = risopt(&[
        "optimize",
        "--channel",
        path.to_str().unwrap(),
        "--k",
        "2",
        "--method",
        "optimize",
        "--method",
        "exhaustive",
    ]);
    std::fs::remove_file(path).ok();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("N 3  K 2"));
    let caps: Vec<&str> = text
        .lines()
        .filter(|l| l.trim_start().starts_with("capacity_bits_per_s"))
        .collect();
    assert_eq!(caps.len(), 2);
    assert_eq!(caps[0], caps[1]);
}

#[test]
fn bench_writes_csv_to_out() {
    let path = std::env::temp_dir().join(format!("risopt-{}-out.csv", std::process::id()));
    let out = risopt(&[
        "bench",
        "fig-ssc-count",
        "--m",
        "10,11",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(path).ok();
    assert!(text.starts_with("experiment,method,N,K,M,seed,replicate,metric,value\n"));
    assert!(text.contains("fig-ssc-count,imb,,4,10,1,all,options_examined,210\n"));
    assert!(text.contains("fig-ssc-count,imb_ssc,,4,10,1,all,options_examined,110\n"));
}
