//! Gnuplot script for a trace CSV. Plain text; nothing here runs gnuplot.

/// Script plotting speed, voltage and sliding variable from `csv_file`
/// (as referenced from the script's own directory) into `<stem>.png`.
pub fn gnuplot_script(csv_file: &str, stem: &str) -> String {
    format!(
        r#"# gnuplot -c {stem}.gp
set datafile separator ','
set key autotitle columnhead
set terminal pngcairo size 1000,900
set output '{stem}.png'
set multiplot layout 3,1
set xlabel 't [s]'
set ylabel 'speed [RPM]'
plot '{csv_file}' using 1:2 with lines, '' using 1:3 with lines
set ylabel 'voltage [V]'
plot '{csv_file}' using 1:5 with lines, '' using 1:6 with lines
set ylabel 's'
plot '{csv_file}' using 1:7 with lines
unset multiplot
"#
    )
}
