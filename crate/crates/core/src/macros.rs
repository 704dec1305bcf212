/// Field-wise `Clone`, `Debug`, `PartialEq` and `Eq` for structs generic over
/// a base category, without demanding those traits of the base itself.
macro_rules! base_struct_impls {
    ($name:ident { $($field:ident),* $(,)? }) => {
        impl<V: $crate::kernel::BaseCategory> Clone for $name<V> {
            fn clone(&self) -> Self {
                $name { $($field: self.$field.clone()),* }
            }
        }

        impl<V: $crate::kernel::BaseCategory> std::fmt::Debug for $name<V> {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                f.debug_struct(stringify!($name))
                    $(.field(stringify!($field), &self.$field))*
                    .finish()
            }
        }

        impl<V: $crate::kernel::BaseCategory> PartialEq for $name<V> {
            fn eq(&self, other: &Self) -> bool {
                true $(&& self.$field == other.$field)*
            }
        }

        impl<V: $crate::kernel::BaseCategory> Eq for $name<V> {}
    };
}
