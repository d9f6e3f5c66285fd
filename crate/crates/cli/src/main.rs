fn main() {
    println!("catring: work in progress");
}
