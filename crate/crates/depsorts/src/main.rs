fn main() {
    depsorts::cli::main()
}
