macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run().expect(concat!($file, " should run"));
        }
    };
}

example!(characters, "characters.rs");
example!(fourier, "fourier.rs");
example!(varieties, "varieties.rs");
example!(closed_forms, "closed_forms.rs");
example!(lifting, "lifting.rs");
example!(constants, "constants.rs");
example!(sharpness, "sharpness.rs");
example!(stein_tomas, "stein_tomas.rs");
