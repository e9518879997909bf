use eqpot::figures::{compute_figure, emit_figure, FigureSpec};

#[test]
fn each_figure_writes_a_table_and_a_script() {
    let dir = tempfile::tempdir().unwrap();
    for id in 1..=4 {
        let files = emit_figure(&FigureSpec::reference(id).unwrap(), dir.path()).unwrap();
        assert_eq!(files.len(), 2);
        assert!(files.iter().all(|f| f.exists()));
    }
    let mut names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(
        names,
        [
            "fig1.csv", "fig1.gp", "fig2.csv", "fig2.gp", "fig3.csv", "fig3.gp", "fig4.csv",
            "fig4.gp"
        ]
    );
    let fig2 = std::fs::read_to_string(dir.path().join("fig2.csv")).unwrap();
    assert!(fig2.lines().any(|l| l == "q,VQ_h0,VQ_h3,VQ_h6"));
    assert!(fig2.lines().next().unwrap().starts_with('#'));
}

#[test]
fn mass_profiles_relax_to_the_bare_mass() {
    let d = compute_figure(&FigureSpec::reference(1).unwrap()).unwrap();
    for label in ["M_hbar10", "M_hbar30"] {
        let m = d.column(label).unwrap();
        assert!((m[0] - 1.0).abs() < 1e-6 && (m[m.len() - 1] - 1.0).abs() < 1e-6);
    }
    // Close to the barrier the ħ = 30 profile is still far from 1.
    let q = d.column("q").unwrap();
    let m30 = d.column("M_hbar30").unwrap();
    let i4 = q.iter().position(|&x| x == 4.0).unwrap();
    assert!((m30[i4] - 1.0).abs() > 1e-4);
}

#[test]
fn stronger_smoothing_lowers_the_center() {
    let d = compute_figure(&FigureSpec::reference(2).unwrap()).unwrap();
    let q = d.column("q").unwrap();
    let (h0, h3, h6) = (
        d.column("VQ_h0").unwrap(),
        d.column("VQ_h3").unwrap(),
        d.column("VQ_h6").unwrap(),
    );
    for i in 0..q.len() {
        if q[i].abs() < 0.25 {
            assert!(h6[i] <= h3[i] && h3[i] <= h0[i]);
        }
    }
}
