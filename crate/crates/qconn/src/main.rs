fn main() {
    std::process::exit(qconn::cli::run());
}
