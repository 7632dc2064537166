//! Command-line front end: generation, verification, statistics, benchmarks.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 unsupported parameter (the window height 1 case is prior work).

use std::io::{BufWriter, Read as IoRead, Write};
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use crate::assembly::{hamilton, verify_hamilton};
use crate::chaingray::{expand_to_hamilton, lambda_recursive, loopless, GeneratorState};
use crate::factor::Factor;
use crate::scd::{chain_of, enumerate_chains, Chain};
use crate::words::{brgc, Bits};

#[derive(Parser)]
#[command(
    name = "graykit",
    about = "Gray codes around the symmetric chain decomposition of the n-cube",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the symmetric chain decomposition of Q_n, longest chains first,
    /// or the single chain containing --vertex.
    Scd {
        #[arg(long)]
        n: usize,
        /// A vertex of Q_n as a 0/1 string; prints only its chain.
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Build the cycle factor on the middle 2l levels of Q_n (odd n) and
    /// dump its cycles, or summarize them with --stats.
    Factor {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        /// Print one tab-separated summary record instead of the cycles.
        #[arg(long)]
        stats: bool,
    },
    /// Emit a verified Hamilton cycle of the middle 2l levels of Q_n.
    Hamilton {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value_t = Format::Bits)]
        format: Format,
    },
    /// Emit the cyclic chain ordering of Q_n, one chain per line.
    ChainGray {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Algorithm::Loopless)]
        algorithm: Algorithm,
        /// Stop after this many chains.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Emit a Hamilton cycle of the whole cube Q_n, one vertex per line.
    CubeGray {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Source::Chains)]
        source: Source,
    },
    /// Check a sequence piped on stdin; exit 0 if it passes.
    Verify {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: Option<usize>,
    },
    /// Run the loopless generator to completion and report per-visit
    /// mutation counts and throughput.
    Bench {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    /// One 0/1 vertex per line.
    Bits,
    /// One 1-based flipped-position index per line, wraparound included.
    Transitions,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Loopless,
    Recursive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    /// Expansion of the chain ordering.
    Chains,
    /// Binary reflected Gray code.
    Brgc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Hamilton cycle of the middle 2l levels (bits format).
    Hamilton,
    /// Cyclic chain listing: every chain once, at most 3 changed positions.
    Gray3,
    /// Chain listing that partitions the vertices of Q_n.
    ScdPartition,
}

fn usage(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Scd { n, vertex } => cmd_scd(n, vertex.as_deref()),
        Cmd::Factor { n, l, stats } => cmd_factor(n, l, stats),
        Cmd::Hamilton { n, l, format } => cmd_hamilton(n, l, format),
        Cmd::ChainGray { n, algorithm, limit } => cmd_chain_gray(n, algorithm, limit),
        Cmd::CubeGray { n, source } => cmd_cube_gray(n, source),
        Cmd::Verify { mode, n, l } => cmd_verify(mode, n, l),
        Cmd::Bench { n } => cmd_bench(n),
    }
}

fn cmd_scd(n: usize, vertex: Option<&str>) -> i32 {
    if !(1..=24).contains(&n) {
        return usage("scd requires 1 <= n <= 24");
    }
    let out = std::io::stdout();
    let mut w = BufWriter::new(out.lock());
    if let Some(s) = vertex {
        let x = match Bits::from_str(s) {
            Ok(x) if x.len() == n => x,
            _ => return usage("--vertex must be a 0/1 string of length n"),
        };
        writeln!(w, "{}", chain_of(&x)).unwrap();
    } else {
        for c in enumerate_chains(n) {
            writeln!(w, "{c}").unwrap();
        }
    }
    w.flush().unwrap();
    0
}

fn cmd_factor(n: usize, l: usize, stats: bool) -> i32 {
    if n % 2 == 0 || !(3..=17).contains(&n) {
        return usage("factor requires odd n with 3 <= n <= 17");
    }
    if !(2..=(n + 1) / 2).contains(&l) {
        return usage("factor requires 2 <= l <= (n+1)/2");
    }
    let factor = Factor::build(n, l);
    let out = std::io::stdout();
    let mut w = BufWriter::new(out.lock());
    if stats {
        let st = factor.stats();
        let hist = if st.shorts.is_empty() {
            "-".to_string()
        } else {
            st.shorts.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        };
        writeln!(w, "n\tl\ttotal\tshorts_by_range\tlongs").unwrap();
        writeln!(w, "{}\t{}\t{}\t{}\t{}", n, l, st.total, hist, st.longs).unwrap();
    } else {
        for (ci, c) in factor.cycles.iter().enumerate() {
            if ci > 0 {
                writeln!(w).unwrap();
            }
            for v in &c.vertices {
                writeln!(w, "{v}").unwrap();
            }
        }
    }
    w.flush().unwrap();
    0
}

fn cmd_hamilton(n: usize, l: usize, format: Format) -> i32 {
    if n % 2 == 0 || !(3..=15).contains(&n) {
        return usage("hamilton requires odd n with 3 <= n <= 15");
    }
    if l == 1 {
        eprintln!("error: l = 1 is unsupported (prior work)");
        return 3;
    }
    if !(2..=(n + 1) / 2).contains(&l) {
        return usage("hamilton requires 2 <= l <= (n+1)/2");
    }
    let seq = hamilton(n, l);
    if let Err(e) = verify_hamilton(&seq, n, l) {
        eprintln!("error: self-verification failed: {e}");
        return 1;
    }
    print_cycle(&seq, format);
    0
}

fn print_cycle(seq: &[Bits], format: Format) {
    let out = std::io::stdout();
    let mut w = BufWriter::new(out.lock());
    match format {
        Format::Bits => {
            for v in seq {
                writeln!(w, "{v}").unwrap();
            }
        }
        Format::Transitions => {
            for i in 0..seq.len() {
                let d = seq[i].diff_positions(&seq[(i + 1) % seq.len()]);
                assert_eq!(d.len(), 1, "cycle steps must flip exactly one position");
                writeln!(w, "{}", d[0]).unwrap();
            }
        }
    }
    w.flush().unwrap();
}

fn cmd_chain_gray(n: usize, algorithm: Algorithm, limit: Option<usize>) -> i32 {
    let out = std::io::stdout();
    let mut w = BufWriter::new(out.lock());
    let cap = limit.unwrap_or(usize::MAX);
    match algorithm {
        Algorithm::Loopless => {
            if !(2..=30).contains(&n) {
                return usage("chain-gray --algorithm loopless requires 2 <= n <= 30");
            }
            for c in loopless(n).take(cap) {
                writeln!(w, "{c}").unwrap();
            }
        }
        Algorithm::Recursive => {
            if !(2..=24).contains(&n) {
                return usage("chain-gray --algorithm recursive requires 2 <= n <= 24");
            }
            for c in lambda_recursive(n).into_iter().take(cap) {
                writeln!(w, "{c}").unwrap();
            }
        }
    }
    w.flush().unwrap();
    0
}

fn cmd_cube_gray(n: usize, source: Source) -> i32 {
    if !(2..=20).contains(&n) {
        return usage("cube-gray requires 2 <= n <= 20");
    }
    let out = std::io::stdout();
    let mut w = BufWriter::new(out.lock());
    match source {
        Source::Chains => {
            for v in expand_to_hamilton(n) {
                writeln!(w, "{v}").unwrap();
            }
        }
        Source::Brgc => {
            for v in brgc(n) {
                writeln!(w, "{v}").unwrap();
            }
        }
    }
    w.flush().unwrap();
    0
}

fn read_stdin_lines() -> Vec<String> {
    let mut buf = String::new();
    std::io::stdin().read_to_string(&mut buf).expect("stdin must be valid UTF-8");
    buf.lines().filter(|s| !s.is_empty()).map(|s| s.to_string()).collect()
}

fn fail(msg: String) -> i32 {
    eprintln!("verification failed: {msg}");
    1
}

fn cmd_verify(mode: Mode, n: usize, l: Option<usize>) -> i32 {
    match mode {
        Mode::Hamilton => {
            if n % 2 == 0 || n < 3 {
                return usage("verify --mode hamilton requires odd n >= 3");
            }
            let l = l.unwrap_or((n + 1) / 2);
            if !(2..=(n + 1) / 2).contains(&l) {
                return usage("verify --mode hamilton requires 2 <= l <= (n+1)/2");
            }
            let mut seq = Vec::new();
            for (k, line) in read_stdin_lines().iter().enumerate() {
                match Bits::from_str(line) {
                    Ok(x) if x.len() == n => seq.push(x),
                    _ => return fail(format!("line {}: not a 0/1 string of length {n}", k + 1)),
                }
            }
            match verify_hamilton(&seq, n, l) {
                Ok(()) => 0,
                Err(e) => fail(e),
            }
        }
        Mode::Gray3 => {
            if !(2..=24).contains(&n) {
                return usage("verify --mode gray3 requires 2 <= n <= 24");
            }
            verify_gray3(n)
        }
        Mode::ScdPartition => {
            if !(1..=24).contains(&n) {
                return usage("verify --mode scd-partition requires 1 <= n <= 24");
            }
            verify_scd_partition(n)
        }
    }
}

fn parse_chains(n: usize) -> Result<Vec<Chain>, String> {
    let mut seq = Vec::new();
    for (k, line) in read_stdin_lines().iter().enumerate() {
        if line.len() != n || !line.bytes().all(|b| matches!(b, b'0' | b'1' | b'*')) {
            return Err(format!("line {}: not a 0/1/* string of length {n}", k + 1));
        }
        let c = crate::scd::chain(line);
        if !c.is_valid() {
            return Err(format!("line {}: {line} is not a chain of the decomposition", k + 1));
        }
        seq.push(c);
    }
    Ok(seq)
}

fn verify_gray3(n: usize) -> i32 {
    let seq = match parse_chains(n) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let mut want = enumerate_chains(n);
    want.sort();
    let mut got = seq.clone();
    got.sort();
    if got != want {
        return fail(format!(
            "expected every chain of Q_{n} exactly once ({} chains), got {} lines",
            want.len(),
            seq.len()
        ));
    }
    for k in 0..seq.len() {
        let a = seq[k];
        let b = seq[(k + 1) % seq.len()];
        let diff = (1..=n).filter(|&i| a.get(i) != b.get(i)).count();
        if diff > 3 {
            return fail(format!("step {}: {a} -> {b} changes {diff} > 3 positions", k + 1));
        }
    }
    0
}

fn verify_scd_partition(n: usize) -> i32 {
    let seq = match parse_chains(n) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let mut seen = vec![false; 1usize << n];
    let mut covered = 0usize;
    for (k, c) in seq.iter().enumerate() {
        for i in 0..=c.star_count() {
            let v = c.vertex_at(i).raw() as usize;
            if seen[v] {
                return fail(format!("line {}: vertex {} already covered", k + 1, c.vertex_at(i)));
            }
            seen[v] = true;
            covered += 1;
        }
    }
    if covered != 1usize << n {
        return fail(format!("chains cover {covered} of {} vertices", 1usize << n));
    }
    0
}

fn cmd_bench(n: usize) -> i32 {
    if !(1..=30).contains(&n) {
        return usage("bench requires 1 <= n <= 30");
    }
    let mut st = GeneratorState::new(n);
    let start = Instant::now();
    let mut visits = 1u64;
    let mut max = 0u64;
    let mut total = 0u64;
    while st.advance() {
        visits += 1;
        let m = st.last_step_mutations();
        total += m;
        max = max.max(m);
    }
    let secs = start.elapsed().as_secs_f64();
    assert!(max <= 64, "per-visit mutation bound violated: {max}");
    println!("n\tvisits\tmax_mutations\tmean_mutations\tvisits_per_sec");
    println!(
        "{}\t{}\t{}\t{:.3}\t{:.0}",
        n,
        visits,
        max,
        total as f64 / (visits - 1).max(1) as f64,
        visits as f64 / secs.max(1e-9)
    );
    0
}
