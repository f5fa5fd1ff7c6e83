//! Run every mistake in the corpus through the verifier and print the
//! feedback a student would see, in each shipped language.

use sequent_trainer::corpus::mistakes;
use sequent_trainer::feedback::Catalogs;
use sequent_trainer::proof::verify;

fn main() {
    let catalogs = Catalogs::shipped();
    for m in mistakes() {
        let report = verify(&m.file.into_tree());
        let (check, d) = report.failures().next().expect("every mistake is rejected");
        println!("{} ({}) at {}", m.name, d.detail, check.location);
        println!("  {}", m.description);
        for locale in catalogs.locales() {
            println!("  [{locale}] {}", catalogs.message_for(d, locale));
        }
    }
}
