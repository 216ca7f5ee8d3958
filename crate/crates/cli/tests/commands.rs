mod common;

use common::{fixture, fpn, fpn_with_env, scratch, write, SCHUR_2};
use fpn_core::counting::Colouring;
use fpn_core::io::fpnc;
use fpn_core::{PrimeField, Space};

fn save(dir: &std::path::Path, name: &str, phi: &Colouring) -> std::path::PathBuf {
    let path = dir.join(name);
    fpnc::write(&path, phi).unwrap();
    path
}

#[test]
fn check_pr_outcomes() {
    let dir = scratch("check");
    let schur = write(&dir, "schur.json", SCHUR_2);
    let run = fpn(&["check-pr".as_ref(), schur.as_os_str()]);
    assert_eq!(run.code, 0);
    assert_eq!(run.json["results"]["partition_regular"], true);
    assert!(run.json["results"]["certificate"]["ordering"].is_array());

    let not = write(&dir, "not.json", r#"{"p":7,"r":1,"forms":[[1,0],[0,1],[5,5]],"colourings":[[1,1,1]]}"#);
    let run = fpn(&["check-pr".as_ref(), not.as_os_str()]);
    assert_eq!(run.code, 1);
    assert!(run.stderr.contains("not partition-regular"));

    let cut = write(&dir, "cut.json", &SCHUR_2[..20]);
    let run = fpn(&["check-pr".as_ref(), cut.as_os_str()]);
    assert_eq!(run.code, 2);
    assert!(!run.stderr.is_empty());
}

#[test]
fn gen_is_seeded_and_exact() {
    let dir = scratch("gen");
    let out = |name: &str, seed: &str, mode: &str| {
        let path = dir.join(name);
        let run = fpn(&["gen", "--p", "2", "--n", "12", "--r", "2", "--seed", seed, "--mode", mode, "-o", path.to_str().unwrap()]);
        (run, path)
    };
    let (run, a) = out("a.fpnc", "5", "sparse:2:1/100");
    assert_eq!(run.code, 0);
    let (_, b) = out("b.fpnc", "5", "sparse:2:1/100");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let phi = fpnc::read(&a).unwrap();
    assert_eq!(phi.table().iter().filter(|&&c| c == 2).count(), 41);

    let (run, _) = out("c.fpnc", "5", "sparse:2:3/2");
    assert_eq!(run.code, 2);
    let (run, _) = out("d.fpnc", "5", "sparse:2:x");
    assert_eq!(run.code, 2);

    let one = dir.join("one.fpnc");
    let run = fpn(&["gen", "--p", "3", "--n", "3", "--r", "1", "-o", one.to_str().unwrap()]);
    assert_eq!(run.code, 0);
    assert!(fpnc::read(&one).unwrap().table().iter().all(|&c| c == 1));
}

/// Monochromatic 3-APs (x, x+d, x+2d) over F_3^4, all x and d.
fn brute_ap3(phi: &Colouring) -> usize {
    let space = phi.space();
    let mut count = 0;
    for x in 0..space.size() {
        for d in 0..space.size() {
            let y = space.add(x, d);
            let z = space.add(y, d);
            count += usize::from(phi.colour(x) == phi.colour(y) && phi.colour(y) == phi.colour(z));
        }
    }
    count
}

#[test]
fn density_values() {
    let pattern = fixture("ap3_f3.json");
    let colouring = fixture("coloured_f3n4.fpnc");
    let run = fpn(&["density".as_ref(), pattern.as_os_str(), colouring.as_os_str()]);
    assert_eq!(run.code, 0);
    assert_eq!(run.json["results"]["density"]["value"], "547/2187");
    assert_eq!(brute_ap3(&fpnc::read(&colouring).unwrap()), 1641);
    assert_eq!(1641 * 2187, 547 * 6561);

    let dir = scratch("density");
    let space = Space::new(PrimeField::new(3).unwrap(), 2).unwrap();
    let constant = save(&dir, "k.fpnc", &Colouring::constant(space, 2, 1).unwrap());
    let all = write(
        &dir,
        "all.json",
        r#"{"p":3,"r":2,"forms":[[1,0],[1,1]],"colourings":[[1,1],[1,2],[2,1],[2,2]]}"#,
    );
    let run = fpn(&["density".as_ref(), all.as_os_str(), constant.as_os_str()]);
    assert_eq!(run.json["results"]["density"]["value"], "1/1");
    let none = write(&dir, "none.json", r#"{"p":3,"r":2,"forms":[[1,0],[1,1]],"colourings":[]}"#);
    let run = fpn(&["density".as_ref(), none.as_os_str(), constant.as_os_str()]);
    assert_eq!(run.json["results"]["density"]["value"], "0/1");

    let wrong_p = write(&dir, "p5.json", r#"{"p":5,"r":2,"forms":[[1,0],[1,1]],"colourings":[[1,1]]}"#);
    assert_eq!(fpn(&["density".as_ref(), wrong_p.as_os_str(), constant.as_os_str()]).code, 2);
    let wrong_r = write(&dir, "r3.json", r#"{"p":3,"r":3,"forms":[[1,0],[1,1]],"colourings":[[1,1]]}"#);
    assert_eq!(fpn(&["density".as_ref(), wrong_r.as_os_str(), constant.as_os_str()]).code, 2);
}

#[test]
fn enumeration_cap_is_exit_three() {
    let pattern = fixture("ap3_f3.json");
    let colouring = fixture("coloured_f3n4.fpnc");
    let run = fpn_with_env(&["density".as_ref(), pattern.as_os_str(), colouring.as_os_str()], &[("FPN_MAX_POINTS", "1000")]);
    assert_eq!(run.code, 3, "{}", run.stderr);
}

#[test]
fn arl_cases() {
    let dir = scratch("arl");
    let f = PrimeField::new(2).unwrap();
    let space = Space::new(f, 8).unwrap();
    let constant = save(&dir, "k.fpnc", &Colouring::constant(space, 2, 2).unwrap());
    let run = fpn(&["arl".as_ref(), constant.as_os_str(), "--epsilon".as_ref(), "0.3".as_ref()]);
    assert_eq!(run.code, 0);
    assert_eq!(run.json["results"]["codim"], 0);

    let half = Colouring::from_fn(space, 2, |x| 1 + ((x >> 3) & 1) as u8).unwrap();
    let half = save(&dir, "h.fpnc", &half);
    let args = ["arl".as_ref(), half.as_os_str(), "--epsilon".as_ref(), "0.3".as_ref()];
    let run = fpn(&args);
    assert_eq!(run.code, 0);
    assert!(run.json["results"]["codim"].as_u64().unwrap() <= 1);
    assert_eq!(run.json["results"]["irregular_fraction"]["value"], "0/1");
    assert_eq!(run.stable(), fpn(&args).stable());

    let run = fpn(&[
        "arl".as_ref(),
        half.as_os_str(),
        "--epsilon".as_ref(),
        "0.3".as_ref(),
        "--max-codim".as_ref(),
        "0".as_ref(),
    ]);
    assert_eq!(run.code, 1);
    assert_eq!(run.json["results"]["regular"], false);
}

#[test]
fn recolour_trivial_and_tiny() {
    let dir = scratch("recolour");
    let schur = write(&dir, "schur.json", SCHUR_2);
    let space = Space::new(PrimeField::new(2).unwrap(), 8).unwrap();
    let input = save(&dir, "in.fpnc", &Colouring::constant(space, 2, 1).unwrap());
    let out = dir.join("out.fpnc");
    let report = dir.join("report.json");
    let run = fpn(&[
        "recolour".as_ref(),
        schur.as_os_str(),
        input.as_os_str(),
        "--epsilon".as_ref(),
        "1/4".as_ref(),
        "-o".as_ref(),
        out.as_os_str(),
        "--report".as_ref(),
        report.as_os_str(),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(std::fs::read(&input).unwrap(), std::fs::read(&out).unwrap());
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written["results"]["verification"]["changed_count"], 0);

    let small = Space::new(PrimeField::new(2).unwrap(), 3).unwrap();
    let tiny = save(&dir, "tiny.fpnc", &Colouring::constant(small, 2, 2).unwrap());
    let run = fpn(&[
        "recolour".as_ref(),
        schur.as_os_str(),
        tiny.as_os_str(),
        "--epsilon".as_ref(),
        "1/4".as_ref(),
        "-o".as_ref(),
        dir.join("x.fpnc").as_os_str(),
    ]);
    assert_eq!(run.code, 4);
    assert!(run.stderr.contains("selection failed"));
}

#[test]
fn verify_outcomes() {
    let dir = scratch("verify");
    let schur = write(&dir, "schur.json", SCHUR_2);
    let space = Space::new(PrimeField::new(2).unwrap(), 6).unwrap();
    let dirty = save(&dir, "dirty.fpnc", &Colouring::from_fn(space, 2, |x| 1 + u8::from(x < 8)).unwrap());
    let eps0 = ["--epsilon", "0"];
    let run = fpn(&[
        "verify".as_ref(),
        schur.as_os_str(),
        dirty.as_os_str(),
        dirty.as_os_str(),
        eps0[0].as_ref(),
        eps0[1].as_ref(),
    ]);
    assert_eq!(run.code, 1);
    assert_eq!(run.json["results"]["verification"]["change_bound_ok"], true);
    assert!(run.json["results"]["verification"]["witness"].is_array());

    let clean = save(&dir, "clean.fpnc", &Colouring::constant(space, 2, 1).unwrap());
    let run = fpn(&[
        "verify".as_ref(),
        schur.as_os_str(),
        clean.as_os_str(),
        clean.as_os_str(),
        eps0[0].as_ref(),
        eps0[1].as_ref(),
    ]);
    assert_eq!(run.code, 0);

    let other = Space::new(PrimeField::new(3).unwrap(), 2).unwrap();
    let mismatch = save(&dir, "other.fpnc", &Colouring::constant(other, 2, 1).unwrap());
    let run = fpn(&[
        "verify".as_ref(),
        schur.as_os_str(),
        clean.as_os_str(),
        mismatch.as_os_str(),
        eps0[0].as_ref(),
        eps0[1].as_ref(),
    ]);
    assert_eq!(run.code, 2);
}
