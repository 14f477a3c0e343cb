fn main() {
    std::process::exit(wlan_mac_lab::harness::main_with_args(std::env::args_os()));
}
