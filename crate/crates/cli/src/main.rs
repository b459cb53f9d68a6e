fn main() {
    std::process::exit(bam_cli::run(std::env::args_os()));
}
