fn main() {
    std::process::exit(weilmono_cli::run(std::env::args()));
}
