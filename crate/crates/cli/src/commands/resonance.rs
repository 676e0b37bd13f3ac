use crate::cli::ResonanceArgs;
use crate::output::{Result, Table};
use lattice_solver::{default_pole_guess, find_resonance, residue_array};

pub fn run(a: ResonanceArgs) -> Result<()> {
    let p = super::model(&a.model)?;
    let res = find_resonance(&p, default_pole_guess(&p))?;
    let array = residue_array(&p, &res, a.nmax)?;
    let command = format!(
        "deltaion resonance --alpha {} --omega {} --nmax {}",
        p.alpha, p.omega, a.nmax
    );
    let mut table = Table::new(command, vec!["n", "re_q", "im_q", "re_residue", "im_residue"]);
    table.meta("alpha", p.alpha);
    table.meta("omega", p.omega);
    table.meta("re_q_pole", crate::output::fmt_f64(res.q_pole.re));
    table.meta("im_q_pole", crate::output::fmt_f64(res.q_pole.im));
    table.meta("gamma", crate::output::fmt_f64(res.gamma));
    for (i, (q, r)) in array.iter().enumerate() {
        let n = i as f64 - a.nmax as f64;
        table.rows.push(vec![n, q.re, q.im, r.re, r.im]);
    }
    table.emit(a.out.output.as_deref(), a.out.format)
}
