use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use mgsqd::{Error, ErrorClass};

pub const EXIT_INTERNAL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DATA: u8 = 3;
pub const EXIT_NUMERICAL: u8 = 4;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Lib(Error),
}

impl Failure {
    fn code_and_exit(&self) -> (&'static str, u8) {
        match self {
            Failure::Usage(_) => ("usage", EXIT_USAGE),
            Failure::Lib(e) => (
                e.code(),
                match e.class() {
                    ErrorClass::Usage => EXIT_USAGE,
                    ErrorClass::Data => EXIT_DATA,
                    ErrorClass::Numerical => EXIT_NUMERICAL,
                    ErrorClass::Internal => EXIT_INTERNAL,
                },
            ),
        }
    }

    pub fn report(&self) -> ExitCode {
        let (code, exit) = self.code_and_exit();
        let msg = match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        };
        eprintln!("error[{code}]: {}", one_line(&msg));
        ExitCode::from(exit)
    }
}

fn one_line(msg: &str) -> String {
    msg.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Help and version go to stdout as usual; every other parse failure is a
/// one-line usage error.
pub fn clap_failure(e: clap::Error) -> ExitCode {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
            let _ = e.print();
            ExitCode::SUCCESS
        }
        ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            Failure::Usage("a subcommand is required".into()).report()
        }
        _ => {
            let text = e.to_string();
            let head: Vec<&str> = text
                .lines()
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .collect();
            let msg = head.join(" ");
            let msg = msg.trim().trim_start_matches("error: ");
            Failure::Usage(msg.to_string()).report()
        }
    }
}

pub fn read_input(path: &Path) -> Result<String, Failure> {
    if !path.exists() {
        return Err(Failure::Usage(format!("{}: no such file", path.display())));
    }
    fs::read_to_string(path).map_err(|source| {
        Failure::Lib(Error::Io {
            path: path.display().to_string(),
            source,
        })
    })
}

/// Writes through a temporary sibling and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let io_err = |source| {
        Failure::Lib(Error::Io {
            path: path.display().to_string(),
            source,
        })
    };
    let name = path
        .file_name()
        .ok_or_else(|| Failure::Usage(format!("{}: not a file path", path.display())))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result.map_err(io_err)
}

/// To `path` when given, else standard output.
pub fn emit(out: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}
