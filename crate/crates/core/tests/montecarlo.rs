use powervar::generators::ProcessKind;
use powervar::montecarlo::{run_cell, run_table, CellConfig, TableConfig};

#[test]
fn cell_is_independent_of_thread_count() {
    let config = CellConfig::new(ProcessKind::Cyclo, 100, 40, 100, 17);
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| run_cell(&config).unwrap())
    };
    let one = run(1);
    let eight = run(8);
    assert_eq!(one, eight);
    assert!(one.p_values.iter().zip(&eight.p_values).all(|(a, b)| a.to_bits() == b.to_bits()));
}

#[test]
fn desk_grid_orders_power_and_calibrates_size() {
    let config = TableConfig { bootstraps: 300, ..TableConfig::desk_scale(2024).with_trials(300) };
    let report = run_table(&config).unwrap();
    assert_eq!(report.cells.len(), 21);
    println!("{}", report.percentage_table());

    let rate = |kind, n| report.cell(kind, n).unwrap().rejection_rate;
    assert!(rate(ProcessKind::Jump, 1000) > rate(ProcessKind::Jump, 100));
    for cell in report.cells.iter().filter(|c| c.config.kind == ProcessKind::Ar1) {
        assert!(
            (0.02..=0.10).contains(&cell.rejection_rate),
            "AR size {} at N={}",
            cell.rejection_rate,
            cell.config.n
        );
    }
    for cell in &report.cells {
        assert!((0.0..=1.0).contains(&cell.rejection_rate));
        assert!((0.0..=1.0).contains(&cell.mean_p));
        assert_eq!(cell.histogram(20).counts.iter().sum::<usize>(), cell.config.trials);
    }
}
