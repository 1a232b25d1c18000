use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bsq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bsq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn bsq_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bsq"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn reduce_examples() {
    let o = bsq(&["reduce", "-m", "2", "-n", "3", "b^-1 a^4 b"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("a^6\n", 0));
    let o = bsq(&["reduce", "-m", "2", "-n", "3", "a a^-1"]);
    assert_eq!(stdout(&o), "1\n");
    let o = bsq(&["reduce", "-m", "2", "-n", "3", "b a^-1 b^-1 a b a b^-1"]);
    assert_eq!(stdout(&o), "b a^-1 b^-1 a b a b^-1\n");
}

#[test]
fn reduce_strategies_and_batch() {
    let o = bsq(&[
        "reduce",
        "-m",
        "2",
        "-n",
        "4",
        "--strategy",
        "rightmost",
        "b^-1 a^2 b a^-4",
    ]);
    assert_eq!(stdout(&o), "1\n");
    let o = bsq_stdin(
        &["reduce", "-m", "2", "-n", "3", "--file", "-"],
        "b^-1 a^2 b\n\nb a^3 b^-1\n",
    );
    assert_eq!((stdout(&o).as_str(), code(&o)), ("a^3\na^2\n", 0));
}

#[test]
fn eq_exit_codes() {
    let o = bsq(&["eq", "-m", "2", "-n", "3", "b^-1 a^2 b", "a^3"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("equal\n", 0));
    let o = bsq(&["eq", "-m", "2", "-n", "3", "b a^-1 b^-1 a b a b^-1", "a"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("not-equal\n", 1));
    let o = bsq(&[
        "eq",
        "-m",
        "2",
        "-n",
        "4",
        "a^-1 b a^2 b^-1 a",
        "b a^2 b^-1",
    ]);
    assert_eq!(code(&o), 1);
}

#[test]
fn negative_parameters() {
    let o = bsq(&["eq", "-m", "-2", "-n", "4", "b^-1 a^-2 b", "a^4"]);
    assert_eq!(code(&o), 0);
    let o = bsq(&["classify", "-2", "3"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("m=-2\nn=3\n"));
}

#[test]
fn errors_map_to_exit_codes() {
    assert_eq!(code(&bsq(&["reduce", "-m", "0", "-n", "3", "a"])), 2);
    assert_eq!(code(&bsq(&["classify", "2", "0"])), 2);
    assert_eq!(code(&bsq(&["eq", "-m", "2", "-n", "3", "a^", "a"])), 2);
    assert_eq!(code(&bsq(&["nonsense"])), 2);
    let o = bsq(&[
        "reduce",
        "-m",
        "2",
        "-n",
        "3",
        "b^-1 a^4611686018427387904 b",
    ]);
    assert_eq!(code(&o), 3);
    assert_eq!(
        code(&bsq(&[
            "separate", "-m", "1", "-n", "2", "a", "b", "--dmax", "8"
        ])),
        3
    );
}

#[test]
fn classify_goldens() {
    let o = bsq(&["classify", "2", "3"]);
    assert_eq!(
        stdout(&o),
        "m=2\nn=3\nprime_support_m={2}\nprime_support_n={3}\ngroup_rf=false\ngroup_hopf=false\n\
         conj_rf=false\nconj_hopf=NonHopfian\nroute=Case1\nconj_infinitely_generated=true\n"
    );
    let text = stdout(&bsq(&["classify", "3", "3"]));
    assert!(text.contains("conj_rf=true\nconj_hopf=Open(Q1)\n"));
    assert!(text.contains("route=RF\n"));
    let text = stdout(&bsq(&["classify", "12", "18"]));
    assert!(text.contains("route=Case3\ngcd=6\nreduced=(2,3)\n"));
}

#[test]
fn separate_examples() {
    let o = bsq(&["separate", "-m", "1", "-n", "2", "a", "a^3", "--dmax", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "degree=3\nalpha=2 3 1\nbeta=1 3 2\nimage_u=2 3 1\nimage_v=1 2 3\n"
    );
    let o = bsq(&["separate", "-m", "2", "-n", "2", "b", "b^2", "--dmax", "2"]);
    assert_eq!(
        stdout(&o),
        "degree=2\nalpha=1 2\nbeta=2 1\nimage_u=2 1\nimage_v=1 2\n"
    );
    assert_eq!(code(&bsq(&["separate", "-m", "2", "-n", "2", "b", "b"])), 2);
    // degree 1 sends every word to the identity
    let o = bsq(&["separate", "-m", "1", "-n", "2", "a", "b", "--dmax", "1"]);
    assert_eq!((stdout(&o).as_str(), code(&o)), ("none found\n", 1));
}

#[test]
fn quotients_count() {
    let o = bsq(&["quotients", "-m", "1", "-n", "2", "-d", "3"]);
    assert!(stdout(&o).ends_with("count=12\n"));
    let o = bsq(&["quotients", "-m", "1", "-n", "2", "-d", "3", "--limit", "2"]);
    assert_eq!(
        stdout(&o),
        "alpha=1 2 3 beta=1 2 3\nalpha=1 2 3 beta=1 3 2\ncount=2\n"
    );
}

#[test]
fn witness_reports() {
    let o = bsq(&["witness", "case1", "-m", "2", "-n", "3"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("case=Case1\npresentation=BS(2,3)\n"));
    assert!(text.contains("noninjectivity.lhs_image=a^2\nnoninjectivity.rhs_image=a^2\n"));
    assert!(text.contains("noninjectivity.images_equal=true\n"));
    assert!(text.contains("noninjectivity.preimages_equal=false\n"));
    assert!(text.ends_with("status=pass\n"));

    let o = bsq(&["witness", "case2", "-m", "2", "-n", "4"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("surjectivity.recovered.a^2=a^4 *^-1 b\n"));
    assert!(text.contains("inequality.printed.holds=true\n"));
    assert!(text.ends_with("status=pass\n"));

    assert_eq!(code(&bsq(&["witness", "case1", "-m", "2", "-n", "2"])), 2);
    assert_eq!(code(&bsq(&["witness", "case2", "-m", "2", "-n", "3"])), 2);
}

#[test]
fn conjz_golden() {
    let o = bsq(&["witness", "conjz", "-N", "10"]);
    assert_eq!(code(&o), 0);
    assert_eq!(
        stdout(&o),
        "case=ConjZ\nwindow=[-10,10]\nmap=a^k -> a^(k-sign(k))\nhomomorphism.checked=441\n\
         homomorphism.passed=441\nnoninjectivity.exponents=(0,1)\nnoninjectivity.image=0\n\
         surjectivity.image=[-9,9]\nsurjectivity.missing=\nstatus=pass\n"
    );
}

#[test]
fn genquandle_into_axioms() {
    let table = stdout(&bsq(&["genquandle", "trivial", "4"]));
    assert_eq!(table, "4\n0 0 0 0\n1 1 1 1\n2 2 2 2\n3 3 3 3\n");
    let o = bsq_stdin(&["axioms", "-"], &table);
    assert_eq!(
        (stdout(&o).as_str(), code(&o)),
        ("size=4\nfailures=0\nstatus=pass\n", 0)
    );

    let table = stdout(&bsq(&["genquandle", "conj-sym", "3"]));
    let o = bsq_stdin(&["axioms", "-"], &table);
    assert_eq!(stdout(&o), "size=6\nfailures=0\nstatus=pass\n");

    for kind in [["conj-cyclic", "5"], ["dehn-sym", "4"]] {
        let table = stdout(&bsq(&["genquandle", kind[0], kind[1]]));
        assert_eq!(code(&bsq_stdin(&["axioms", "-"], &table)), 0);
    }
}

#[test]
fn axioms_failures_and_corruption() {
    let o = bsq_stdin(&["axioms", "-"], "3\n0 1 2\n0 2 2\n0 1 2\n");
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("failure axiom=1 x=1\n"));
    let o = bsq_stdin(&["axioms", "-"], "3\n0 1 2\n0 1\n0 1 2\n");
    assert_eq!(code(&o), 2);
    let o = bsq(&["axioms", "/nonexistent/table.txt"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn closure_listing() {
    let o = bsq(&[
        "closure", "-m", "2", "-n", "4", "--depth", "1", "a", "b", "a^4",
    ]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains(" depth=1 a^2 = a^4 *^-1 b\n"));
    assert!(text.ends_with("count=11\n"));
    let o = bsq(&[
        "closure", "-m", "2", "-n", "3", "--depth", "3", "--limit", "5", "a", "b",
    ]);
    assert_eq!(code(&o), 3);
}

#[test]
fn expand_terms() {
    let o = bsq(&["expand", "a * b * a *^-1 b"]);
    assert_eq!(stdout(&o), "b a^-1 b^-1 a b a b^-1\n");
    let o = bsq(&["expand", "x * y", "--bind", "x=a", "--bind", "y=b"]);
    assert_eq!(stdout(&o), "b^-1 a b\n");
    let o = bsq(&["expand", "a^2 * b", "-m", "2", "-n", "3"]);
    assert_eq!(stdout(&o), "a^3\n");
    assert_eq!(code(&bsq(&["expand", "x * a"])), 2);
}

#[test]
fn abelian_image() {
    let o = bsq(&["abelian", "-m", "2", "-n", "5", "b^-1 a^2 b a"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "(0 mod 3, 0)\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["witness", "case2", "-m", "3", "-n", "9"];
    assert_eq!(bsq(&args).stdout, bsq(&args).stdout);
}
