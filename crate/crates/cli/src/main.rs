fn main() {
    println!("qmcsp: subcommands not wired up yet");
}
